use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gerbe_core::random::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "gerbe", version, about = "Exact gerbe obstruction calculus on simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Command {
    /// Cohomology group of a complex.
    Cohomology(CohomologyArgs),
    /// Zig-zag transcript and classifying cocycle of a closed 2- or 3-cochain.
    Classify(ClassifyArgs),
    /// Integrality verdict with its certificate.
    Integrality(CochainArgs),
    /// Line bundle transition data of an integral closed 2-cochain.
    LineBundle(CochainArgs),
    /// Classifying 3-cocycle of the 2-gerbe of a closed 3-cochain.
    TwoGerbe(CochainArgs),
    /// Connecting homomorphism of a quotient-valued cocycle.
    Connecting(CochainArgs),
    /// Surface holonomy of the canonical connection.
    Holonomy(HolonomyArgs),
    /// Holonomy along a loop modulo the period group.
    LoopHolonomy(LoopArgs),
    /// Period group of a closed cochain.
    Periods(CochainArgs),
    /// Chern class and reducibility of a quotient cocycle.
    Reduce(ReduceArgs),
    /// Extension class of two closed 2-cochains on a product.
    ExtensionDelta(ExtensionArgs),
    /// Poisson bracket and the prequantization identity.
    Prequant(PrequantArgs),
    /// Lists fixtures with their recomputed invariants.
    Fixtures(FixturesArgs),
    /// Runs the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Space {
    /// Name of a shipped fixture.
    #[arg(long, conflicts_with = "complex")]
    pub fixture: Option<String>,
    /// Complex JSON file.
    #[arg(long)]
    pub complex: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum RingArg {
    #[value(name = "Z")]
    Z,
    #[value(name = "Q")]
    Q,
}

#[derive(Debug, Args, Serialize)]
pub struct CohomologyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value = "Z")]
    pub ring: RingArg,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    #[arg(long)]
    pub cochain: PathBuf,
    /// 2 for a gerbe, 3 for a 2-gerbe; defaults to the cochain's degree.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub degree: Option<u8>,
}

#[derive(Debug, Args, Serialize)]
pub struct CochainArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    /// Cochain JSON file.
    #[arg(long)]
    pub cochain: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct HolonomyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    #[arg(long)]
    pub cochain: PathBuf,
    /// Closed surface (complex JSON); the base itself when omitted.
    #[arg(long)]
    pub surface: Option<PathBuf>,
    /// Vertex map from the surface to the base; the identity when omitted.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LoopArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    #[arg(long)]
    pub cochain: PathBuf,
    /// 1-cycle (chain JSON).
    #[arg(long = "cycle", visible_alias = "loop")]
    pub loop_chain: PathBuf,
    /// Bounding 2-chain; found by an integral solve when omitted.
    #[arg(long)]
    pub chain: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ReduceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub space: Space,
    /// Quotient cocycle JSON: {"lattice": ..., "values": 1-cochain}.
    #[arg(long)]
    pub qcocycle: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ExtensionArgs {
    /// Base factor: fixture name or complex file.
    #[arg(long)]
    pub base: String,
    /// Fibre factor: fixture name or complex file.
    #[arg(long)]
    pub fibre: String,
    #[arg(long)]
    pub omega: PathBuf,
    #[arg(long = "omega-prime")]
    pub omega_prime: PathBuf,
    /// Fibre vertex of the section.
    #[arg(long)]
    pub point: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct PrequantArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
}

#[derive(Debug, Args, Serialize)]
pub struct FixturesArgs {
    /// Only this fixture.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}
