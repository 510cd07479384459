//! The `ade` command line: argument parsing, dispatch and JSON reports.
//!
//! [`run`] never touches the process; it returns the exit code and both output streams.

pub mod input;
pub mod json;

use std::collections::BTreeSet;

use clap::{ArgAction, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bundle::{build_tautological, restrict_to_boundary, EGroup, FormalBundle, Marking, Rep};
use crate::divisor::{euler_char, ext_profile, is_effective, CollisionConfig, Effectivity};
use crate::enumerate::{self, LinearConstraint, DEFAULT_SOLUTION_CAP};
use crate::error::{Error, Result};
use crate::lattice::{ModelKind, SurfaceModel};
use crate::local::{check_free, check_generate, verify_extension_chain, GradedModule};
use crate::roots::{enumerate_roots, weight_of, weyl_orbit, OrthClass, RootDatum};
use crate::spectral::{analyze, fiber_picard, sen_delta, DegreeData};
use crate::transform::{transform, TwistMode};

pub const VERBOSITY_VAR: &str = "ADE_VERBOSE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "ade", version, about = "Lattices, bundles and local models for ADE surface fibrations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct SurfaceArgs {
    /// `hirzebruch` or `p2` (long forms `hirzebruch_blowup`, `p2_blowup` also accepted).
    #[arg(long)]
    kind: Option<String>,
    /// Number of blown-up points.
    #[arg(long)]
    n: Option<usize>,
    /// Surface config file `{"kind", "n", "collisions"}`.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["kind", "n"])]
    surface: Option<String>,
    /// Add the collision curve `l_j - l_i`; repeatable.
    #[arg(long = "collide", num_args = 2, value_names = ["I", "J"], action = ArgAction::Append)]
    collide: Vec<usize>,
}

#[derive(Args, Debug, Clone)]
struct OrthArgs {
    /// Classes the roots must be orthogonal to, from K, f, b.
    #[arg(long, value_delimiter = ',', default_value = "K")]
    orth: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Lattice data of a surface model.
    Surface {
        #[command(flatten)]
        s: SurfaceArgs,
        #[arg(default_value = "info", value_parser = ["info"])]
        action: String,
    },
    /// Exceptional classes: `x.x = -1`, `x.K = -1`, plus `--constraint C=v`.
    Lines {
        #[command(flatten)]
        s: SurfaceArgs,
        /// Extra linear condition `class=value`, e.g. `f=0`; repeatable.
        #[arg(long = "constraint")]
        constraints: Vec<String>,
        /// Stop with an error after this many solutions.
        #[arg(long, default_value_t = DEFAULT_SOLUTION_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Root system orthogonal to the given classes.
    Roots {
        #[command(flatten)]
        s: SurfaceArgs,
        #[command(flatten)]
        o: OrthArgs,
    },
    /// Weyl orbit of a class.
    Orbit {
        #[command(flatten)]
        s: SurfaceArgs,
        #[command(flatten)]
        o: OrthArgs,
        /// Starting class: JSON, a file, or an expression such as `l1-l0`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Stop with an error when the orbit grows past this size.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Pairings with the simple roots.
    Weights {
        #[command(flatten)]
        s: SurfaceArgs,
        #[command(flatten)]
        o: OrthArgs,
        /// Class to pair with the simple roots; repeatable.
        #[arg(long, required = true, allow_hyphen_values = true)]
        class: Vec<String>,
    },
    /// Holomorphic Euler characteristic of `O(D)`.
    Chi {
        #[command(flatten)]
        s: SurfaceArgs,
        /// The divisor class `D`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// `Ext^i(O(L1), O(L2))`.
    Ext {
        #[command(flatten)]
        s: SurfaceArgs,
        /// Class of the first line bundle.
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        /// Class of the second line bundle.
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
    },
    /// Effectivity of a class with a certificate.
    Effective {
        #[command(flatten)]
        s: SurfaceArgs,
        /// Class to test.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Tautological bundle of a representation.
    Bundle {
        #[command(flatten)]
        s: SurfaceArgs,
        /// `fundamental_A`, `vector_D` or `adjoint`.
        #[arg(long)]
        rep: String,
        /// Twist every summand by this class, e.g. `-l0`.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
    },
    /// Restrict a degree-zero tautological bundle to the boundary curve.
    Restrict {
        #[command(flatten)]
        s: SurfaceArgs,
        /// `fundamental_A`, `vector_D` or `adjoint`.
        #[arg(long)]
        rep: String,
        /// Order of the cyclic group modelling the boundary curve.
        #[arg(long = "N", default_value_t = crate::bundle::DEFAULT_GROUP_ORDER, value_parser = clap::value_parser!(u64).range(1..))]
        group: u64,
        /// Points `p_1, ..., p_n` attached to `l_1, ..., l_n`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<i64>,
    },
    /// Spectral covers.
    Spectral {
        #[command(subcommand)]
        cmd: SpectralCmd,
    },
    /// The class-level transform.
    Transform {
        #[command(subcommand)]
        cmd: TransformCmd,
    },
    /// Graded ring computations.
    Localmodel {
        #[command(subcommand)]
        cmd: LocalCmd,
    },
    /// Run a named check suite.
    Suite {
        #[arg(long, value_parser = ["paper-checks"])]
        name: String,
    },
}

#[derive(Subcommand, Debug)]
enum SpectralCmd {
    /// Discriminant, branch points and ramification profiles.
    Analyze {
        /// Cover `{"n", "coeffs"}` as inline JSON or a file.
        #[arg(long)]
        cover: String,
    },
    /// Discriminant and degree bookkeeping of a conic-bundle family.
    Sen {
        /// Degree of `L^{-1}` on the ruling.
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Polynomial in `t`, e.g. `1 + 2*t^2`.
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
        #[arg(long, allow_hyphen_values = true)]
        b4: String,
        #[arg(long, allow_hyphen_values = true)]
        b6: String,
    },
    /// Decomposition of the fiber Picard lattice.
    Picard {
        /// Number of blown-up points on the Hirzebruch model.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TransformCmd {
    /// Transform spectral data into a bundle and restrict it to the boundary.
    Run {
        /// Surface config file; must be a Hirzebruch model.
        #[arg(long)]
        surface: String,
        /// Spectral datum `{"N", "points", "degrees", "base_twist_degree"}` as a file or inline JSON.
        #[arg(long)]
        spectral: String,
        /// `raw`, `minus_l0` or `full`.
        #[arg(long, default_value = "full")]
        twist: String,
        /// Treat a violated sum-zero constraint as an error.
        #[arg(long)]
        strict: bool,
        /// Add the collisions the datum needs instead of requiring them in the surface file.
        #[arg(long)]
        auto_collide: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LocalCmd {
    /// Run the conifold checks.
    Verify {
        #[arg(long, value_parser = ["conifold"], default_value = "conifold")]
        suite: String,
        /// Highest degree to check.
        #[arg(long, default_value_t = 8)]
        maxdeg: u32,
    },
    /// Graded dimensions of a ring, optionally of a module inside it.
    Dims {
        /// Ring `{"vars", "relations", "max_degree"}` as a file or inline JSON.
        #[arg(long)]
        ring: String,
        /// Highest degree to report.
        #[arg(long)]
        upto: u32,
        /// Module generators, comma separated.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<String>,
        /// Coefficient variables for the module, comma separated; all by default.
        #[arg(long, value_delimiter = ',')]
        over: Vec<String>,
    },
}

/// Parse `args` (without the program name) and run the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let verbose = std::env::var(VERBOSITY_VAR).ok().and_then(|v| v.parse().ok()).unwrap_or(0);
    run_with(args, verbose)
}

pub fn run_with<I, S>(args: I, verbose: u8) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("ade".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut log = Log { verbose, text: String::new() };
    match dispatch(cli.cmd, &mut log) {
        Ok(Report { value, code }) => Outcome {
            code,
            stdout: json::render(&value),
            stderr: log.text,
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: json::render(&json::error(&e)),
            stderr: log.text,
        },
    }
}

struct Log {
    verbose: u8,
    text: String,
}

impl Log {
    fn note(&mut self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            self.text.push_str(msg.as_ref());
            self.text.push('\n');
        }
    }
}

struct Report {
    value: Value,
    code: i32,
}

impl From<Value> for Report {
    fn from(value: Value) -> Self {
        Self { value, code: 0 }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Step<T> = std::result::Result<T, Failure>;

struct Surface {
    model: SurfaceModel,
    collisions: CollisionConfig,
}

fn surface(a: &SurfaceArgs) -> Step<Surface> {
    let (model, mut pairs) = if let Some(path) = &a.surface {
        let cfg = input::surface_config(&input::read_json(path)?)?;
        (cfg.model, cfg.collisions.pairs().to_vec())
    } else {
        let (Some(kind), Some(n)) = (&a.kind, a.n) else {
            return Err(Failure::Usage("give either --surface FILE or both --kind and --n".into()));
        };
        let kind = ModelKind::from_name(kind, n)
            .ok_or_else(|| Failure::Usage(format!("unknown --kind `{kind}` (expected hirzebruch or p2)")))?;
        (SurfaceModel::build(kind)?, Vec::new())
    };
    pairs.extend(a.collide.chunks(2).map(|c| (c[0], c[1])));
    let collisions = CollisionConfig::new(&model, &pairs)?;
    Ok(Surface { model, collisions })
}

fn orth(a: &OrthArgs) -> Step<Vec<OrthClass>> {
    a.orth
        .iter()
        .map(|s| OrthClass::parse(s).ok_or_else(|| Failure::Usage(format!("unknown --orth class `{s}`"))))
        .collect()
}

fn rep(s: &str) -> Step<Rep> {
    Rep::parse(s).ok_or_else(|| Failure::Usage(format!("unknown --rep `{s}`")))
}

fn root_json(d: &RootDatum) -> Value {
    json!({
        "type": d.type_label.to_string(),
        "rank": d.rank(),
        "count": d.roots.len(),
        "simple_roots": d.simple_roots.iter().map(json::coeffs).collect::<Vec<_>>(),
        "cartan": d.cartan,
        "roots": json::class_list(&d.roots),
    })
}

fn dispatch(cmd: Cmd, log: &mut Log) -> Step<Report> {
    Ok(match cmd {
        Cmd::Surface { s, .. } => {
            let Surface { model, collisions } = surface(&s)?;
            let k = model.canonical();
            let (pos, neg, zero) = model.signature();
            json!({
                "basis": model.kind().id(),
                "kind": model.kind().name(),
                "n": model.kind().points(),
                "rank": model.rank(),
                "labels": model.kind().labels(),
                "gram": model.gram(),
                "canonical": json::coeffs(k),
                "K.K": json::int(&k.self_pairing()),
                "boundary": json::coeffs(&model.boundary()),
                "signature": [pos, neg, zero],
                "collisions": collisions.pairs(),
                "collision_curves": collisions.induced_curves().iter().map(json::coeffs).collect::<Vec<_>>(),
            })
            .into()
        }
        Cmd::Lines { s, constraints, cap } => {
            let Surface { model, .. } = surface(&s)?;
            let mut cons = vec![LinearConstraint::new(model.canonical().clone(), -1)];
            for c in &constraints {
                let (lhs, rhs) = c
                    .split_once('=')
                    .ok_or_else(|| Failure::Usage(format!("constraint `{c}` is not of the form class=value")))?;
                let v: i64 = rhs
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("constraint `{c}` needs an integer value")))?;
                cons.push(LinearConstraint::new(input::class_expr(&model, lhs)?, v));
            }
            let found = enumerate::solve(&model, &cons, &(-1).into(), cap as usize)?;
            log.note(format!("{} classes found", found.len()));
            json!({
                "basis": model.kind().id(),
                "labels": model.kind().labels(),
                "constraints": constraints,
                "count": found.len(),
                "classes": json::class_list(&found),
            })
            .into()
        }
        Cmd::Roots { s, o } => {
            let Surface { model, .. } = surface(&s)?;
            let d = enumerate_roots(&model, &orth(&o)?)?;
            let mut v = root_json(&d);
            v["basis"] = json!(model.kind().id());
            v.into()
        }
        Cmd::Orbit { s, o, class, cap } => {
            let Surface { model, .. } = surface(&s)?;
            let d = enumerate_roots(&model, &orth(&o)?)?;
            let c = input::class_arg(&model, &class)?;
            let orbit = weyl_orbit(&d, &c, cap as usize)?;
            json!({
                "basis": model.kind().id(),
                "class": json::coeffs(&c),
                "root_type": d.type_label.to_string(),
                "size": orbit.len(),
                "orbit": json::class_list(&orbit),
            })
            .into()
        }
        Cmd::Weights { s, o, class } => {
            let Surface { model, .. } = surface(&s)?;
            let d = enumerate_roots(&model, &orth(&o)?)?;
            let mut rows = Vec::new();
            for c in &class {
                let cls = input::class_arg(&model, c)?;
                let w = weight_of(&d, &cls)?;
                rows.push(json!({
                    "class": json::coeffs(&cls),
                    "weight": w.entries.iter().map(json::int).collect::<Vec<_>>(),
                }));
            }
            json!({
                "basis": model.kind().id(),
                "root_type": d.type_label.to_string(),
                "simple_roots": d.simple_roots.iter().map(json::coeffs).collect::<Vec<_>>(),
                "weights": rows,
            })
            .into()
        }
        Cmd::Chi { s, class } => {
            let Surface { model, .. } = surface(&s)?;
            let d = input::class_arg(&model, &class)?;
            let chi = euler_char(&model, &d)?;
            json!({
                "basis": model.kind().id(),
                "class": json::coeffs(&d),
                "D.D": json::int(&d.self_pairing()),
                "D.K": json::int(&model.pair(&d, model.canonical())?),
                "chi": json::int(&chi),
            })
            .into()
        }
        Cmd::Ext { s, l1, l2 } => {
            let Surface { model, collisions } = surface(&s)?;
            let (a, b) = (input::class_arg(&model, &l1)?, input::class_arg(&model, &l2)?);
            let p = ext_profile(&model, &collisions, &a, &b)?;
            let cert = p.certificate.as_ref().map(|c| {
                c.iter()
                    .map(|(g, m)| json!({"generator": json::coeffs(g), "multiplicity": json::int(m)}))
                    .collect::<Vec<_>>()
            });
            json!({
                "basis": model.kind().id(),
                "collisions": collisions.pairs(),
                "l1": json::coeffs(&a),
                "l2": json::coeffs(&b),
                "ext": [p.ext0, p.ext1, p.ext2],
                "index": p.index,
                "certificate": cert,
            })
            .into()
        }
        Cmd::Effective { s, class } => {
            let Surface { model, collisions } = surface(&s)?;
            let d = input::class_arg(&model, &class)?;
            let (status, cert) = match is_effective(&model, &collisions, &d)? {
                Effectivity::Effective(c) => (
                    "effective",
                    Some(
                        c.iter()
                            .map(|(g, m)| json!({"generator": json::coeffs(g), "multiplicity": json::int(m)}))
                            .collect::<Vec<_>>(),
                    ),
                ),
                Effectivity::NotEffective => ("not_effective", None),
                Effectivity::Indeterminate { budget } => return Err(Error::Indeterminate { budget }.into()),
            };
            json!({ "class": json::coeffs(&d), "status": status, "certificate": cert }).into()
        }
        Cmd::Bundle { s, rep: r, twist } => {
            let Surface { model, .. } = surface(&s)?;
            let mut b = build_tautological(&model, rep(&r)?)?;
            if let Some(t) = twist {
                b = b.twist(&input::class_arg(&model, &t)?)?;
            }
            let mut v = json::formal_bundle(&model, &b);
            v["rep"] = json!(rep(&r)?.name());
            v.into()
        }
        Cmd::Restrict { s, rep: r, group, points } => {
            let Surface { model, .. } = surface(&s)?;
            let rp = rep(&r)?;
            let b = degree_zero(&model, rp)?;
            let g = EGroup::new(group)?;
            let marking = Marking::from_values(g, &points);
            let e = restrict_to_boundary(&model, &b, &marking)?;
            json!({ "rep": rp.name(), "bundle": json::formal_bundle(&model, &b), "boundary": json::ebundle(&e) }).into()
        }
        Cmd::Spectral { cmd } => spectral(cmd)?,
        Cmd::Transform {
            cmd:
                TransformCmd::Run {
                    surface: sfile,
                    spectral,
                    twist,
                    strict,
                    auto_collide,
                },
        } => {
            let cfg = input::surface_config(&input::read_json(&sfile)?)?;
            let datum = input::spectral_datum(&input::json_arg(&spectral)?)?;
            let mode =
                TwistMode::parse(&twist).ok_or_else(|| Failure::Usage(format!("unknown --twist `{twist}`")))?;
            let mut warnings = Vec::new();
            if !datum.su_constraint() {
                let msg = format!("points do not sum to 0 in Z/{}", datum.group().order());
                if strict {
                    return Err(Error::InvalidDatum(msg).into());
                }
                warnings.push(msg);
            }
            let collisions = if auto_collide {
                let mut pairs: BTreeSet<(usize, usize)> = cfg.collisions.pairs().iter().copied().collect();
                pairs.extend(datum.required_collisions());
                CollisionConfig::new(&cfg.model, &pairs.into_iter().collect::<Vec<_>>())?
            } else {
                cfg.collisions
            };
            let t = transform(&cfg.model, &collisions, &datum, mode)?;
            let blocks: Vec<Value> = t
                .collision_blocks
                .iter()
                .map(|b| {
                    json!({
                        "point": b.point.value(),
                        "multiplicity": b.multiplicity,
                        "classes": b.classes.iter().map(json::coeffs).collect::<Vec<_>>(),
                        "c1": json::coeffs(&b.c1()),
                    })
                })
                .collect();
            json!({
                "twist": mode.name(),
                "su_constraint": datum.su_constraint(),
                "warnings": warnings,
                "bundle": json::formal_bundle(&cfg.model, &t.bundle),
                "collision_blocks": blocks,
                "c1": json::coeffs(&t.c1),
                "c1_fiber": json::int(&t.c1_fiber),
                "boundary": json::ebundle(&t.boundary),
                "base_twist_degree": t.base_twist_degree,
            })
            .into()
        }
        Cmd::Localmodel { cmd } => local(cmd, log)?,
        Cmd::Suite { .. } => {
            let results = crate::suite::acceptance_checks();
            for r in &results {
                log.note(format!("criterion {}: {:.2}s", r.id, r.elapsed.as_secs_f64()));
            }
            let passed = results.iter().all(|r| r.passed);
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                .collect();
            Report {
                value: json!({ "suite": "paper-checks", "passed": passed, "criteria": rows }),
                code: if passed { 0 } else { 1 },
            }
        }
    })
}

/// Tautological bundle twisted to boundary degree zero.
fn degree_zero(model: &SurfaceModel, rep: Rep) -> Result<FormalBundle> {
    let b = build_tautological(model, rep)?;
    match rep {
        Rep::Adjoint => Ok(b),
        Rep::FundamentalA | Rep::VectorD => b.twist(&-&model.l0()?),
    }
}

fn spectral(cmd: SpectralCmd) -> Step<Report> {
    Ok(match cmd {
        SpectralCmd::Analyze { cover } => {
            let c = input::cover(&input::json_arg(&cover)?)?;
            let r = analyze(&c)?;
            json!({
                "cover": c.display(),
                "degree": r.degree,
                "discriminant": json::poly(&r.discriminant),
                "branch_points": r.branch_points.iter().map(|b| json!({
                    "t": json::rational(&b.t),
                    "order": b.order,
                    "profile": b.profile,
                })).collect::<Vec<_>>(),
                "irrational_factors": r.irrational_factors.iter().map(|(p, m)| json!({
                    "factor": json::poly(p),
                    "multiplicity": m,
                })).collect::<Vec<_>>(),
            })
            .into()
        }
        SpectralCmd::Sen { k, b2, b4, b6 } => {
            let fam = sen_delta(input::t_poly(&b2)?, input::t_poly(&b4)?, input::t_poly(&b6)?, DegreeData::from_k(k))?;
            json!({
                "k": k,
                "delta": json::poly(&fam.delta),
                "degenerate": fam.is_degenerate(),
                "delta_degree": fam.delta_degree,
                "cover_degree": fam.cover_degree,
                "warnings": fam.warnings,
            })
            .into()
        }
        SpectralCmd::Picard { n } => {
            let model = SurfaceModel::hirzebruch(n)?;
            let p = fiber_picard(&model)?;
            json!({
                "basis": model.kind().id(),
                "root_block": p.root_block.iter().map(json::coeffs).collect::<Vec<_>>(),
                "complement": p.complement.iter().map(|(name, c)| json!({"name": name, "class": json::coeffs(c)})).collect::<Vec<_>>(),
                "root_support": p.root_support,
                "complement_support": p.complement_support,
                "index": json::int(&p.index),
            })
            .into()
        }
    })
}

fn local(cmd: LocalCmd, log: &mut Log) -> Step<Report> {
    Ok(match cmd {
        LocalCmd::Verify { maxdeg, .. } => {
            let rep = verify_extension_chain(maxdeg)?;
            let checks: Vec<Value> = rep
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "passed": c.passed,
                        "failed_degree": c.failed_degree,
                        "detail": c.detail,
                        "dims": c.dims.iter().map(|row| {
                            let mut m = serde_json::Map::new();
                            m.insert("degree".into(), json!(row.degree));
                            for (k, v) in &row.values {
                                m.insert((*k).into(), json!(v));
                            }
                            Value::Object(m)
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let failure = rep.failure().map(|(id, d)| json!({"check": id, "degree": d}));
            Report {
                code: if rep.passed() { 0 } else { 1 },
                value: json!({
                    "suite": "conifold",
                    "maxdeg": maxdeg,
                    "passed": rep.passed(),
                    "failure": failure,
                    "checks": checks,
                    "comparison_split": [rep.comparison_split.0, rep.comparison_split.1],
                    "free_split": [rep.free_split.0, rep.free_split.1],
                }),
            }
        }
        LocalCmd::Dims { ring, upto, gens, over } => {
            let r = input::ring(&input::json_arg(&ring)?)?;
            let mut dims = Vec::new();
            for d in 0..=upto {
                dims.push(r.graded_dim(d)?);
            }
            let mut v = json!({
                "vars": r.names().iter().zip(r.degrees()).map(|(n, d)| json!([n, d])).collect::<Vec<_>>(),
                "relations": input::relation_strings(&r),
                "max_degree": r.max_degree(),
                "dims": dims,
            });
            if !gens.is_empty() {
                let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
                let over_refs: Vec<&str> = if over.is_empty() {
                    r.names().iter().map(String::as_str).collect()
                } else {
                    over.iter().map(String::as_str).collect()
                };
                let m = GradedModule::parse(&r, &refs, &over_refs)?;
                let ideal = GradedModule::parse(&r, &refs, &r.names().iter().map(String::as_str).collect::<Vec<_>>())?;
                let g = check_generate(&r, &ideal, &m, upto)?;
                let f = check_free(&r, &m, upto)?;
                log.note(format!("module with {} generators", gens.len()));
                v["module"] = json!({
                    "generators": gens,
                    "over": over_refs,
                    "dims": g.dims.iter().map(|x| x.span).collect::<Vec<_>>(),
                    "ideal_dims": g.dims.iter().map(|x| x.target).collect::<Vec<_>>(),
                    "spans_ideal": g.holds,
                    "free": f.holds,
                    "first_syzygy_degree": f.first_failure,
                });
            }
            v.into()
        }
    })
}
