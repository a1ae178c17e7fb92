use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "qdesign", version, about = "Design-structured measurements: designs, entropic bounds, entanglement criteria")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Verify, search for and list quantum designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Entropic uncertainty bounds and IC-entropy diagrams.
    #[command(subcommand)]
    Eur(EurCmd),
    /// Entanglement detection scans and the separable-state oracle.
    #[command(subcommand)]
    Entdetect(EntdetectCmd),
    /// Run the property suites with a fixed seed.
    Selftest(SelftestArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum DesignCmd {
    /// Check the design property at strength t.
    Verify(VerifyArgs),
    /// Minimize the frame potential to find a t-design.
    Search(SearchArgs),
    /// List the built-in designs.
    List,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct VerifyArgs {
    /// Built-in design (icosahedron, snub-cube-7, mub-qubit).
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub name: Option<String>,
    /// Design file to verify instead of a built-in.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Strength to test; defaults to the claimed strength.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Number of vectors.
    #[arg(long = "K", alias = "k")]
    pub k: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, env = "QDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    /// Name stored in the design file.
    #[arg(long)]
    pub name: Option<String>,
    /// Design file to write; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum EurCmd {
    /// Random distributions and boundary curves in the IC-entropy plane.
    Diagram(DiagramArgs),
    /// The four lower bounds over a grid of Rényi orders.
    Compare(CompareArgs),
    /// Best icosahedral two-outcome bound over a.
    IcoBest(IcoBestArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DiagramArgs {
    /// Distribution length.
    #[arg(long = "L", alias = "l")]
    pub l: usize,
    /// IC order.
    #[arg(long)]
    pub a: u32,
    /// Comma-separated Rényi orders; `inf` for the min-entropy.
    #[arg(long, value_delimiter = ',', default_value = "1,5")]
    pub alphas: Vec<String>,
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    #[arg(long, env = "QDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Points on each boundary curve.
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CompareArgs {
    /// Built-in design name or design file.
    #[arg(long, default_value = "snub-cube")]
    pub design: String,
    /// single, antipodal or pairs; defaults per design.
    #[arg(long)]
    pub grouping: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub a: u32,
    #[arg(long, default_value_t = 2.0)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 12.0)]
    pub alpha_max: f64,
    /// Number of grid points in [alpha-min, alpha-max].
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Append a row at alpha = inf.
    #[arg(long)]
    pub include_inf: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct IcoBestArgs {
    /// `start:step:stop` or a comma-separated list.
    #[arg(long, default_value = "2:0.01:12")]
    pub alpha_grid: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum EntdetectCmd {
    /// Detection map over a state family, or the random-bases experiment.
    Scan(ScanArgs),
    /// Maximize the correlation over product states.
    Oracle(OracleArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ScanArgs {
    /// rho-x-phi, psi-beta-phi, isotropic or unbiasedness.
    #[arg(long)]
    pub family: String,
    /// Points per axis.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// Uniform exponent a_n; defaults to the number of subsystems.
    #[arg(long)]
    pub a: Option<u32>,
    /// Built-in design name or design file for the local measurements.
    #[arg(long, default_value = "icosahedron")]
    pub design: String,
    #[arg(long)]
    pub grouping: Option<String>,
    /// auto, plain or shifted; auto picks shifted for even a.
    #[arg(long, default_value = "auto")]
    pub criterion: String,
    #[arg(long, env = "QDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Basis triples for the unbiasedness family.
    #[arg(long, default_value_t = 500)]
    pub sets: usize,
    /// Points in the x grid for the unbiasedness family.
    #[arg(long, default_value_t = 101)]
    pub x_grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct OracleArgs {
    #[arg(long, default_value = "icosahedron")]
    pub design: String,
    #[arg(long)]
    pub grouping: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub parties: usize,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long, default_value = "auto")]
    pub criterion: String,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, env = "QDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SelftestArgs {
    /// all, qcore, designs, design-search, eur, entdetect or aux.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Also certify this design file at its claimed strength.
    #[arg(long)]
    pub design_file: Option<PathBuf>,
    #[arg(long, env = "QDESIGN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Write to this path instead of the recorded one.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Design(DesignCmd::Verify(_)) => "design verify",
            Command::Design(DesignCmd::Search(_)) => "design search",
            Command::Design(DesignCmd::List) => "design list",
            Command::Eur(EurCmd::Diagram(_)) => "eur diagram",
            Command::Eur(EurCmd::Compare(_)) => "eur compare",
            Command::Eur(EurCmd::IcoBest(_)) => "eur ico-best",
            Command::Entdetect(EntdetectCmd::Scan(_)) => "entdetect scan",
            Command::Entdetect(EntdetectCmd::Oracle(_)) => "entdetect oracle",
            Command::Selftest(_) => "selftest",
            Command::Replay(_) => "replay",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Design(DesignCmd::Search(a)) => Some(a.seed),
            Command::Eur(EurCmd::Diagram(a)) => Some(a.seed),
            Command::Entdetect(EntdetectCmd::Scan(a)) => Some(a.seed),
            Command::Entdetect(EntdetectCmd::Oracle(a)) => Some(a.seed),
            Command::Selftest(a) => Some(a.seed),
            _ => None,
        }
    }

    fn out_slot(&mut self) -> Option<&mut Option<PathBuf>> {
        match self {
            Command::Design(DesignCmd::Search(a)) => Some(&mut a.out),
            Command::Eur(EurCmd::Diagram(a)) => Some(&mut a.out),
            Command::Eur(EurCmd::Compare(a)) => Some(&mut a.out),
            Command::Eur(EurCmd::IcoBest(a)) => Some(&mut a.out),
            Command::Entdetect(EntdetectCmd::Scan(a)) => Some(&mut a.out),
            Command::Entdetect(EntdetectCmd::Oracle(a)) => Some(&mut a.out),
            _ => None,
        }
    }

    /// Output path for commands that write a data file.
    pub fn out(&self) -> Option<&PathBuf> {
        match self {
            Command::Design(DesignCmd::Search(a)) => a.out.as_ref(),
            Command::Eur(EurCmd::Diagram(a)) => a.out.as_ref(),
            Command::Eur(EurCmd::Compare(a)) => a.out.as_ref(),
            Command::Eur(EurCmd::IcoBest(a)) => a.out.as_ref(),
            Command::Entdetect(EntdetectCmd::Scan(a)) => a.out.as_ref(),
            Command::Entdetect(EntdetectCmd::Oracle(a)) => a.out.as_ref(),
            _ => None,
        }
    }

    pub fn set_out(&mut self, path: PathBuf) -> bool {
        match self.out_slot() {
            Some(slot) => {
                *slot = Some(path);
                true
            }
            None => false,
        }
    }

    /// Whether the command produces a data file and therefore a manifest.
    pub fn writes_data(&self) -> bool {
        matches!(
            self,
            Command::Design(DesignCmd::Search(_)) | Command::Eur(_) | Command::Entdetect(_)
        )
    }
}
