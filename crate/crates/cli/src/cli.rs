use clap::{Args, Parser, Subcommand, ValueEnum};

pub const GRAMMAR: &str = "\
usage: flatbldg <COMMAND> --type SPEC [--q THICKNESS] [--format table|json|csv] [--seed N] [--cache] [OPTIONS]

commands:
  info        system data: coxeter matrix, cartan matrix, null vector, special vertices
  roots       roots cutting a gem (--gem s0 [--apex WORD]) or meeting a ball (--radius R); --count prints the count
  hull        convex hull of --points \"W1; W2; ...\" or of --sample K chambers drawn from the ball of --radius R
  sector      chambers of the ball of --radius R inside the sector at --apex WORD of the gem at --gem
  tidy        index sequence of --t WORD|auto for n = 1..--N against the chamber --apex
  flat-roots  roots of the flat group with their values on the translation lattice
  scale       scale of the translation --t WORD|auto and its factorization over root pairs

grammar:
  SPEC       LETTER RANK [~], e.g. A~2, C~2, G~2, A3; or a JSON object {\"generators\":[...],\"m\":[[...]]}
  WORD       generator labels separated by whitespace, e.g. \"s0 s1 s2\"; \"1\" is the identity
  THICKNESS  a single value (uniform), a list in generator order (2,3,2) or s0=2,s1=3,s2=2;
             values must agree across every odd edge of the diagram
";

#[derive(Parser, Debug)]
#[command(name = "flatbldg", version, about = "Affine Coxeter complexes, sectors and the flat-group calculus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    Info(Common),
    Roots(RootsArgs),
    Hull(HullArgs),
    Sector(SectorArgs),
    Tidy(TidyArgs),
    FlatRoots(FlatRootsArgs),
    Scale(ScaleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coxeter system spec.
    #[arg(long = "type", value_name = "SPEC")]
    pub ty: String,
    /// Thickness: uniform value, list, or s0=2,s1=3,...
    #[arg(long, default_value = "2")]
    pub q: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cache ball enumerations on disk (location from FLATBLDG_CACHE_DIR).
    #[arg(long)]
    pub cache: bool,
}

#[derive(Args, Debug, Clone)]
pub struct GemArgs {
    /// Special vertex label; defaults to the reference special vertex.
    #[arg(long)]
    pub gem: Option<String>,
    /// Chamber word; the gem is the one through this chamber.
    #[arg(long, default_value = "1")]
    pub apex: String,
    /// Largest gem the command may enumerate.
    #[arg(long, default_value_t = flatbldg::chamber::RESIDUE_LIMIT)]
    pub gem_limit: u64,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub gem: GemArgs,
    /// Enumerate roots whose walls meet the ball of this radius instead.
    #[arg(long, conflicts_with = "gem")]
    pub radius: Option<usize>,
    #[arg(long)]
    pub count: bool,
}

#[derive(Args, Debug)]
pub struct HullArgs {
    #[command(flatten)]
    pub common: Common,
    /// Chamber words separated by `;`.
    #[arg(long, conflicts_with = "sample")]
    pub points: Option<String>,
    /// Number of chambers drawn from the ball of `--radius`.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    #[arg(long, value_enum, default_value_t = HullModeArg::Roots)]
    pub mode: HullModeArg,
}

#[derive(Args, Debug)]
pub struct SectorArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub gem: GemArgs,
    #[arg(long, default_value_t = 4)]
    pub radius: usize,
}

#[derive(Args, Debug)]
pub struct TidyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub gem: GemArgs,
    /// Element word, or `auto` for the translation of the sector at the apex.
    #[arg(long)]
    pub t: String,
    #[arg(long = "N", default_value_t = 4)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct FlatRootsArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub gem: GemArgs,
    /// Number of sampled translation pairs for the additivity check.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct ScaleArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub gem: GemArgs,
    #[arg(long)]
    pub t: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullModeArg {
    Roots,
    Galleries,
}
