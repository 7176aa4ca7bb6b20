//! Command-line frontend for `flatbldg`: argument parsing, command
//! dispatch, report rendering and the optional ball cache.

pub mod cache;
pub mod cli;
pub mod report;

use std::collections::HashSet;
use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use flatbldg::affine::{Gem, SectorMode};
use flatbldg::chamber::HullMode;
use flatbldg::flat::{Thickness, Verdict};
use flatbldg::{CoxSystem, Elem, Error, RootVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cache::BallCache;
use cli::{Cli, Command, Common, Format, GemArgs, HullModeArg, GRAMMAR};
use report::*;

/// Lattice coordinates of sampled translations lie in `[-BOX, BOX]`.
const SAMPLE_BOX: i64 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one command and returns the process exit code: 0 on success,
/// 1 on a usage error, 2 when a verification check fails.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}\n{GRAMMAR}");
            return 1;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(CliError::Usage(msg)) => {
            let _ = write!(err, "error: {msg}\n\n{GRAMMAR}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Ctx {
    sys: CoxSystem,
    q: Thickness,
    common: Common,
    cache: BallCache,
}

impl Ctx {
    fn new(common: &Common) -> Result<Self, CliError> {
        let sys = flatbldg::build_system(&common.ty)?;
        let q = Thickness::parse(&sys, &common.q)?;
        Ok(Ctx { sys, q, common: common.clone(), cache: BallCache::new(common.cache) })
    }

    fn word(&self, w: &Elem) -> String {
        self.sys.format_elem(w)
    }

    fn gem(&self, args: &GemArgs) -> Result<(Gem, Elem), CliError> {
        let data = self.sys.affine_data().ok_or_else(|| usage("this command requires an affine system"))?;
        let o = match &args.gem {
            Some(label) => self.sys.generator_index(label)?,
            None => data.base_vertex,
        };
        let apex = self.sys.parse_elem(&args.apex)?;
        Ok((self.sys.make_gem_with_limit(o, &apex, args.gem_limit)?, apex))
    }

    fn element(&self, text: &str, gem: &Gem, apex: &Elem) -> Result<Elem, CliError> {
        if text.trim() == "auto" {
            let sigma = self.sys.sector(gem, apex)?;
            Ok(self.sys.sector_translation(&sigma)?.elem)
        } else {
            Ok(self.sys.parse_elem(text)?)
        }
    }

    fn report<T>(&self, command: &str, result: T, checks: Vec<Check>) -> Report<T> {
        Report {
            command: command.to_string(),
            system: self.sys.name().to_string(),
            q: (0..self.sys.rank()).map(|s| self.q.get(s)).collect(),
            result,
            checks,
        }
    }
}

fn emit<T: Serialize + Tabular>(report: &Report<T>, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    render(report, format, out)?;
    let passed = report.passed();
    if !passed {
        let failed: Vec<&Check> = report.checks.iter().filter(|c| !c.pass).collect();
        let record = serde_json::json!({ "command": report.command, "system": report.system, "failed": failed });
        writeln!(err, "{record}")?;
    }
    Ok(passed)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Info(common) => {
            let ctx = Ctx::new(&common)?;
            emit(&ctx.report("info", info(&ctx), vec![]), common.format, out, err)
        }
        Command::Roots(a) => {
            let ctx = Ctx::new(&a.common)?;
            let roots = match a.radius {
                Some(r) => (format!("ball of radius {r}"), ctx.sys.enumerate_roots_meeting_ball(r)),
                None => {
                    let (gem, apex) = ctx.gem(&a.gem)?;
                    let scope = format!("gem at {} through {}", ctx.sys.label(gem.special_vertex()), ctx.word(&apex));
                    (scope, ctx.sys.roots_cutting_gem(&gem))
                }
            };
            let report = ctx.report("roots", roots_result(&ctx, roots.0, &roots.1), vec![negation_check(&roots.1)]);
            if a.count && a.common.format != Format::Json {
                writeln!(out, "{}", report.result.count)?;
                return Ok(report.passed());
            }
            emit(&report, a.common.format, out, err)
        }
        Command::Hull(a) => {
            let ctx = Ctx::new(&a.common)?;
            let points = match (&a.points, a.sample) {
                (Some(p), _) => p.split(';').map(|w| ctx.sys.parse_elem(w)).collect::<Result<Vec<_>, _>>()?,
                (None, Some(k)) => {
                    let ball = ctx.cache.ball(&ctx.sys, a.radius);
                    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
                    let mut idx = rand::seq::index::sample(&mut rng, ball.len(), k.min(ball.len())).into_vec();
                    idx.sort_unstable();
                    idx.into_iter().map(|i| ball[i].clone()).collect()
                }
                (None, None) => return Err(usage("hull needs --points or --sample")),
            };
            let by_roots = ctx.sys.convex_hull(&points, HullMode::RootIntersection)?;
            let by_galleries = ctx.sys.convex_hull(&points, HullMode::GalleryClosure)?;
            let (mode, hull) = match a.mode {
                HullModeArg::Roots => ("roots", &by_roots),
                HullModeArg::Galleries => ("galleries", &by_galleries),
            };
            let witness = symmetric_difference(&by_roots, &by_galleries).map(|w| format!("chamber {}", ctx.word(&w)));
            let result = HullResult {
                mode: mode.to_string(),
                points: points.iter().map(|p| ctx.word(p)).collect(),
                size: hull.len(),
                chambers: hull.iter().map(|c| ctx.word(c)).collect(),
            };
            emit(&ctx.report("hull", result, vec![Check::new("hull modes agree", witness)]), a.common.format, out, err)
        }
        Command::Sector(a) => {
            let ctx = Ctx::new(&a.common)?;
            let (gem, apex) = ctx.gem(&a.gem)?;
            let sigma = ctx.sys.sector(&gem, &apex)?;
            let ball = ctx.cache.ball(&ctx.sys, a.radius);
            let inside: Vec<&Elem> = ball.iter().filter(|x| ctx.sys.sector_membership(&sigma, x, SectorMode::RootIntersection)).collect();
            let witness = ball
                .iter()
                .find(|x| {
                    ctx.sys.sector_membership(&sigma, x, SectorMode::RootIntersection)
                        != ctx.sys.sector_membership(&sigma, x, SectorMode::Projection)
                })
                .map(|x| format!("chamber {}", ctx.word(x)));
            let result = SectorResult {
                gem: ctx.sys.label(gem.special_vertex()).to_string(),
                apex: ctx.word(&apex),
                walls: sigma.walls().iter().map(|w| w.coords().to_vec()).collect(),
                radius: a.radius,
                size: inside.len(),
                chambers: inside.iter().map(|c| ctx.word(c)).collect(),
            };
            emit(&ctx.report("sector", result, vec![Check::new("sector modes agree", witness)]), a.common.format, out, err)
        }
        Command::Tidy(a) => {
            let ctx = Ctx::new(&a.common)?;
            if a.n == 0 {
                return Err(usage("--N must be at least 1"));
            }
            let (gem, apex) = ctx.gem(&a.gem)?;
            let g = ctx.element(&a.t, &gem, &apex)?;
            let rep = ctx.sys.tidiness_check(&apex, &g.clone().into(), a.n, &ctx.q)?;
            let mut checks = Vec::new();
            if rep.translation {
                let witness = rep.geometric.iter().position(|ok| !ok).map(|i| format!("n = {}, element {}", i + 1, ctx.word(&g)));
                checks.push(Check::new("translation indices are geometric", witness));
            }
            let result = TidyResult {
                element: ctx.word(&g),
                chamber: ctx.word(&apex),
                translation: rep.translation,
                indices: rep.indices.iter().map(ToString::to_string).collect(),
                geometric: rep.geometric.clone(),
                verdict: match rep.verdict {
                    Verdict::Tidy => "tidy",
                    Verdict::NotTidy => "not tidy",
                    Verdict::NoClaim => "no claim",
                }
                .to_string(),
            };
            emit(&ctx.report("tidy", result, checks), a.common.format, out, err)
        }
        Command::FlatRoots(a) => {
            let ctx = Ctx::new(&a.common)?;
            let (gem, apex) = ctx.gem(&a.gem)?;
            let (result, checks) = flat_roots(&ctx, &gem, &apex, a.samples)?;
            emit(&ctx.report("flat-roots", result, checks), a.common.format, out, err)
        }
        Command::Scale(a) => {
            let ctx = Ctx::new(&a.common)?;
            let (gem, apex) = ctx.gem(&a.gem)?;
            let g = ctx.element(&a.t, &gem, &apex)?;
            let t = ctx.sys.translation_test(&g)?.ok_or_else(|| usage(format!("element `{}` is not a translation", ctx.word(&g))))?;
            let tc = ctx.sys.multiply(&t.elem, &apex)?;
            let mut result = ScaleResult {
                element: ctx.word(&g),
                lattice: t.lattice.clone(),
                chamber: ctx.word(&apex),
                scale: ctx.sys.q_length(&ctx.sys.weyl_distance(&apex, &tc)?, &ctx.q).to_string(),
                factors: vec![],
            };
            let check = match ctx.sys.scale_with_factorization(&t, &gem, &apex, &ctx.q) {
                Ok(rep) => {
                    result.scale = rep.scale.to_string();
                    result.factors = rep
                        .factors
                        .iter()
                        .map(|f| FactorRow { gamma: f.gamma.coords().to_vec(), scale_base: f.scale_base.to_string(), exponent: f.exponent })
                        .collect();
                    Check::new("scale factorization", None)
                }
                Err(e @ Error::FactorizationMismatch { .. }) => Check::new("scale factorization", Some(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            emit(&ctx.report("scale", result, vec![check]), a.common.format, out, err)
        }
    }
}

fn info(ctx: &Ctx) -> InfoResult {
    let sys = &ctx.sys;
    let data = sys.affine_data();
    let gem_types = |o: usize| (0..sys.rank()).filter(|&s| s != o).collect::<Vec<_>>();
    InfoResult {
        name: sys.name().to_string(),
        kind: format!("{:?}", sys.kind()).to_lowercase(),
        generators: sys.labels().to_vec(),
        coxeter_matrix: sys
            .coxeter_matrix()
            .iter()
            .map(|row| row.iter().map(|&m| if m == flatbldg::coxeter::M_INF { 0 } else { m }).collect())
            .collect(),
        cartan: sys.cartan().to_vec(),
        null_vector: data.map(|d| d.null_vector.clone()),
        special_vertices: data.map_or_else(Vec::new, |d| d.special_vertices.iter().map(|&s| sys.label(s).to_string()).collect()),
        gem_type: data.map(|d| d.gem_type.name()),
        gem_size: data.and_then(|d| sys.parabolic_order(&gem_types(d.base_vertex))).map(|n| n as u64),
        coxeter_number: sys.coxeter_number(),
    }
}

fn roots_result(ctx: &Ctx, scope: String, roots: &[RootVec]) -> RootsResult {
    RootsResult {
        scope,
        count: roots.len(),
        roots: roots
            .iter()
            .map(|r| RootRow { root: r.coords().to_vec(), wall_type: ctx.sys.label(ctx.sys.wall_type(r)).to_string(), height: r.height() })
            .collect(),
    }
}

fn negation_check(roots: &[RootVec]) -> Check {
    let set: HashSet<&RootVec> = roots.iter().collect();
    let witness = roots.iter().find(|r| !set.contains(&r.neg())).map(|r| format!("root {r} without its negative"));
    Check::new("closed under negation", witness)
}

fn symmetric_difference(a: &[Elem], b: &[Elem]) -> Option<Elem> {
    let sa: HashSet<&Elem> = a.iter().collect();
    let sb: HashSet<&Elem> = b.iter().collect();
    a.iter().find(|x| !sb.contains(x)).or_else(|| b.iter().find(|x| !sa.contains(x))).cloned()
}

fn flat_roots(ctx: &Ctx, gem: &Gem, apex: &Elem, samples: usize) -> Result<(FlatRootsResult, Vec<Check>), CliError> {
    let sys = &ctx.sys;
    let roots = sys.flat_root_system(gem, apex, &ctx.q)?;
    let basis = sys.lattice_basis()?;

    let mut seen = HashSet::new();
    let distinct = roots.iter().find(|f| !seen.insert(f.values.clone())).map(|f| format!("root {} repeats values {:?}", f.gamma, f.values));
    let odd = roots
        .iter()
        .find(|f| !roots.iter().any(|g| g.gamma == f.gamma.neg() && g.values.iter().zip(&f.values).all(|(a, b)| *a == -b)))
        .map(|f| format!("root {}", f.gamma));

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.common.seed);
    let mut additive = None;
    for _ in 0..samples {
        let mut draw = || -> Result<_, CliError> {
            let m: Vec<i64> = (0..sys.rank() - 1).map(|_| rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX)).collect();
            Ok(sys.translation_from_lattice(&m)?)
        };
        let (a, b) = (draw()?, draw()?);
        let ab = sys
            .translation_test(&sys.multiply(&a.elem, &b.elem)?)?
            .ok_or_else(|| usage("product of translations is not a translation"))?;
        if let Some(f) = roots.iter().find(|f| f.rho(&ab) != f.rho(&a) + f.rho(&b)) {
            additive = Some(format!("root {} on lattice vectors {:?} and {:?}", f.gamma, a.lattice, b.lattice));
            break;
        }
    }

    let result = FlatRootsResult {
        gem: sys.label(gem.special_vertex()).to_string(),
        chamber: ctx.word(apex),
        lattice_basis: basis.iter().map(|t| ctx.word(&t.elem)).collect(),
        roots: roots
            .iter()
            .map(|f| FlatRootRow {
                gamma: f.gamma.coords().to_vec(),
                pushed: f.pushed.coords().to_vec(),
                m: f.m,
                scale_base: f.scale_base.to_string(),
                values: f.values.clone(),
            })
            .collect(),
    };
    let checks = vec![
        Check::new("roots have distinct values", distinct),
        Check::new("opposite roots have opposite values", odd),
        Check::new("values are additive", additive),
    ];
    Ok((result, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_check_writes_failure_record() {
        let report = Report {
            command: "scale".to_string(),
            system: "A~1".to_string(),
            q: vec![2, 2],
            result: RootsResult { scope: String::new(), count: 0, roots: vec![] },
            checks: vec![Check::new("scale factorization", Some("translation s0 s1".to_string()))],
        };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert!(!emit(&report, Format::Json, &mut out, &mut err).unwrap());
        let record: serde_json::Value = serde_json::from_slice(&err).unwrap();
        assert_eq!(record["failed"][0]["witness"], "translation s0 s1");
        assert_eq!(record["failed"][0]["pass"], false);
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["flatbldg", "roots", "--type", "Q~9"], &mut out, &mut err), 1);
        assert!(String::from_utf8(err).unwrap().contains("grammar:"));
    }
}
