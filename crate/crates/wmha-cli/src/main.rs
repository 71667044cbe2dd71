//! Command-line front end: parse groupoid/action/algebra files, build the
//! named constructions, run the axiom and duality suites, and emit
//! deterministic reports (text on stdout, JSON to a file).
//!
//! Exit codes: 0 = all requested checks passed, 1 = a check failed (the
//! report is still emitted), 2 = input or parse error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use wmha_cli::formats;
use wmha_cli::report::{JsonFixture, JsonReport};
use wmha_core::algebra::Element;
use wmha_core::duality::{
    check_faithful, dual_wmha, find_integrals, is_invariant, run_dual_suite,
    verify_duality_theorem, Side,
};
use wmha_core::fixtures::{self, FixtureKind};
use wmha_core::scalar::Scalar;
use wmha_core::smash::{BalancedTensor, SmashProduct};
use wmha_core::Wmha;

#[derive(Parser)]
#[command(
    name = "wmha",
    about = "Exact-arithmetic weak multiplier Hopf algebras from groupoids",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Fixture name from the registry (see `wmha list-fixtures`).
    #[arg(long)]
    fixture: Option<String>,
    /// Sample budget for lazy fixtures.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the registered fixtures.
    ListFixtures {
        #[command(flatten)]
        common: Common,
    },
    /// Validate a groupoid file, an action file, an algebra file, or the
    /// groupoid underlying a fixture.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Groupoid file to validate.
        #[arg(long)]
        groupoid: Option<PathBuf>,
        /// Action file (requires --groupoid).
        #[arg(long)]
        action: Option<PathBuf>,
        /// Structure-constant algebra file.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Build a construction and print its dimensions.
    Build {
        #[command(flatten)]
        common: Common,
        /// Groupoid file to build the groupoid algebra from.
        #[arg(long)]
        groupoid: Option<PathBuf>,
    },
    /// Run the structure axiom suite (sampled on lazy fixtures).
    Axioms {
        #[command(flatten)]
        common: Common,
    },
    /// Solve for the invariant functionals and test faithfulness.
    Integrals {
        #[command(flatten)]
        common: Common,
    },
    /// Construct the dual structure and verify it.
    Dual {
        #[command(flatten)]
        common: Common,
        /// Integral selection: `sum` (default), `unit-indicator`, or a
        /// basis index into the solved integral space.
        #[arg(long)]
        integral: Option<String>,
    },
    /// Build the smash product of a module fixture and run the smash suite.
    Smash {
        #[command(flatten)]
        common: Common,
    },
    /// Verify the duality theorem for a module fixture.
    Duality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        integral: Option<String>,
    },
    /// Run every suite applicable to the fixture.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        integral: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &JsonReport, json_path: &Option<PathBuf>) -> Result<ExitCode, String> {
    if let Some(path) = json_path {
        fs::write(path, report.to_json()).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(if report.is_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn fixture_kind(name: &str) -> Result<FixtureKind, String> {
    fixtures::find(name)
        .map(|f| f.kind)
        .ok_or_else(|| {
            format!(
                "unknown fixture `{name}`; nearest match is `{}` (see `wmha list-fixtures`)",
                fixtures::nearest(name)
            )
        })
}

fn require_fixture(common: &Common) -> Result<String, String> {
    common
        .fixture
        .clone()
        .ok_or_else(|| "missing --fixture".to_string())
}

/// The structure a fixture contributes checks against: itself for structure
/// fixtures, the acting structure for module fixtures.
fn structure_of(name: &str) -> Result<Wmha, String> {
    match fixture_kind(name)? {
        FixtureKind::Structure => Ok(fixtures::build_structure(name).expect("registered")),
        FixtureKind::Module => Ok(fixtures::build_module(name).expect("registered").wmha),
        FixtureKind::Lazy => Err(format!("fixture {name} is lazy; only `axioms` applies")),
    }
}

fn select_integral(w: &Wmha, selector: &Option<String>) -> Result<Element, String> {
    let basis = find_integrals(w, Side::Left);
    if basis.is_empty() {
        return Err("no integrals: the fixture is not an algebraic quantum groupoid".to_string());
    }
    let phi = match selector.as_deref() {
        None | Some("sum") | Some("unit-indicator") => {
            let mut phi = Element::zero();
            for p in &basis {
                phi.add_scaled(p, &Scalar::one());
            }
            phi
        }
        Some(index) => {
            let i: usize = index
                .parse()
                .map_err(|_| format!("--integral expects `sum`, `unit-indicator` or an index, got `{index}`"))?;
            basis
                .get(i)
                .cloned()
                .ok_or_else(|| format!("integral index {i} out of range (space has dimension {})", basis.len()))?
        }
    };
    Ok(phi)
}

fn print_timing(start: Instant) {
    println!("elapsed: {:?}", start.elapsed());
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::ListFixtures { common } => {
            let mut report = JsonReport::new("list-fixtures", common.seed, common.budget);
            println!("{:<24} {:<10} description", "name", "kind");
            for f in fixtures::registry() {
                let kind = match f.kind {
                    FixtureKind::Structure => "structure",
                    FixtureKind::Module => "module",
                    FixtureKind::Lazy => "lazy",
                };
                println!("{:<24} {:<10} {}", f.name, kind, f.description);
                report.fixtures.push(JsonFixture {
                    name: f.name.to_string(),
                    kind: kind.to_string(),
                    description: f.description.to_string(),
                });
            }
            emit(&report, &common.json)
        }
        Command::Validate {
            common,
            groupoid,
            action,
            algebra,
        } => {
            let mut report = JsonReport::new("validate", common.seed, common.budget);
            if let Some(path) = &algebra {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                report.input = Some(path.display().to_string());
                match formats::parse_algebra(&text) {
                    Ok(alg) => {
                        report.dimension("algebra", alg.dim());
                        let nondeg = alg.check_nondegenerate();
                        let idem = alg.check_idempotent();
                        println!("algebra: dim {}", alg.dim());
                        println!("non-degenerate: {nondeg}");
                        println!("idempotent (A² = A): {idem}");
                        if !nondeg {
                            report.violations.push(wmha_cli::report::JsonViolation {
                                rule: "non-degenerate".into(),
                                witness: "a nonzero annihilator exists".into(),
                            });
                            report.overall = "fail".into();
                        }
                        if !idem {
                            report.violations.push(wmha_cli::report::JsonViolation {
                                rule: "idempotent".into(),
                                witness: "A² is a proper subspace".into(),
                            });
                            report.overall = "fail".into();
                        }
                    }
                    Err(e) => {
                        println!("algebra rejected: {e}");
                        report.violations.push(wmha_cli::report::JsonViolation {
                            rule: "well-formed".into(),
                            witness: format!("{e}"),
                        });
                        report.overall = "fail".into();
                    }
                }
                return emit(&report, &common.json);
            }
            if let Some(path) = &groupoid {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                report.input = Some(path.display().to_string());
                let g = match formats::parse_groupoid_raw(&text) {
                    Ok(g) => g,
                    Err(e) => {
                        // structural parse failure: still a check failure,
                        // reported with its witness line
                        println!("groupoid rejected: {e}");
                        report.violations.push(wmha_cli::report::JsonViolation {
                            rule: "well-formed".into(),
                            witness: format!("{e}"),
                        });
                        report.overall = "fail".into();
                        return emit(&report, &common.json);
                    }
                };
                let validation = g.validate();
                println!("{validation}");
                report.add_validation(&validation);
                report.dimension("objects", g.n_objects());
                report.dimension("morphisms", g.n_morphisms());
                if let Some(apath) = &action {
                    let atext =
                        fs::read_to_string(apath).map_err(|e| format!("{}: {e}", apath.display()))?;
                    match formats::parse_action_raw(&atext, &g) {
                        Ok(a) => {
                            let avalidation = a.validate();
                            println!("action: {avalidation}");
                            report.add_validation(&avalidation);
                            report.dimension("points", a.points().len());
                        }
                        Err(e) => {
                            println!("action rejected: {e}");
                            report.violations.push(wmha_cli::report::JsonViolation {
                                rule: "well-formed-action".into(),
                                witness: format!("{e}"),
                            });
                            report.overall = "fail".into();
                        }
                    }
                }
                return emit(&report, &common.json);
            }
            if let Some(name) = &common.fixture {
                match fixture_kind(name)? {
                    FixtureKind::Lazy => {
                        let g = wmha_core::groupoid::lazy_pair_groupoid();
                        let validation = g.validate_sampled(common.budget, common.seed, 50);
                        println!("{validation} (sampled, budget {})", common.budget);
                        report.fixture = Some(name.clone());
                        report.add_validation(&validation);
                    }
                    _ => {
                        let w = structure_of(name)?;
                        report.fixture = Some(name.clone());
                        report.dimension("algebra", w.algebra().dim());
                        println!("fixture {name}: finite structure of dimension {}", w.algebra().dim());
                    }
                }
                return emit(&report, &common.json);
            }
            Err("validate needs --groupoid, --algebra or --fixture".to_string())
        }
        Command::Build { common, groupoid } => {
            let mut report = JsonReport::new("build", common.seed, common.budget);
            let start = Instant::now();
            if let Some(path) = &groupoid {
                let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let g = formats::parse_groupoid(&text).map_err(|e| format!("{e}"))?;
                report.input = Some(path.display().to_string());
                let w = wmha_core::constructions::groupoid_algebra(&g);
                summarize_structure(&w, &mut report);
                print_timing(start);
                return emit(&report, &common.json);
            }
            let name = require_fixture(&common)?;
            report.fixture = Some(name.clone());
            match fixture_kind(&name)? {
                FixtureKind::Structure => {
                    let w = fixtures::build_structure(&name).unwrap();
                    summarize_structure(&w, &mut report);
                }
                FixtureKind::Module => {
                    let m = fixtures::build_module(&name).unwrap();
                    summarize_structure(&m.wmha, &mut report);
                    report.dimension("coefficient-algebra", m.coeff.dim());
                    println!("coefficient algebra: dim {}", m.coeff.dim());
                }
                FixtureKind::Lazy => {
                    let w = fixtures::build_lazy(&name, 50).unwrap();
                    println!("lazy structure `{}` built (sampled backend)", w.algebra().name());
                }
            }
            print_timing(start);
            emit(&report, &common.json)
        }
        Command::Axioms { common } => {
            let name = require_fixture(&common)?;
            let mut report = JsonReport::new("axioms", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let start = Instant::now();
            let suite = match fixture_kind(&name)? {
                FixtureKind::Lazy => {
                    let w = fixtures::build_lazy(&name, 50).unwrap();
                    w.run_sampled_suite(common.budget, common.seed)
                }
                _ => {
                    let w = structure_of(&name)?;
                    report.dimension("algebra", w.algebra().dim());
                    w.run_axiom_suite()
                }
            };
            print!("{suite}");
            print_timing(start);
            report.add_suite(&suite);
            emit(&report, &common.json)
        }
        Command::Integrals { common } => {
            let name = require_fixture(&common)?;
            let mut report = JsonReport::new("integrals", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let w = structure_of(&name)?;
            let left = find_integrals(&w, Side::Left);
            let right = find_integrals(&w, Side::Right);
            report.dimension("left-integral-space", left.len());
            report.dimension("right-integral-space", right.len());
            println!("left integral space: dimension {}", left.len());
            for phi in &left {
                println!("  {phi}");
                report.integrals.push(format!("{phi}"));
            }
            println!("right integral space: dimension {}", right.len());
            let phi = select_integral(&w, &None)?;
            let two_sided =
                is_invariant(&w, &phi, Side::Left) && is_invariant(&w, &phi, Side::Right);
            let faithful = check_faithful(&w, core::slice::from_ref(&phi));
            println!("default integral two-sided invariant: {two_sided}");
            println!("default integral faithful: {faithful}");
            if left.is_empty() || !faithful {
                report.overall = "fail".to_string();
                println!("fixture is not an algebraic quantum groupoid");
            }
            emit(&report, &common.json)
        }
        Command::Dual { common, integral } => {
            let name = require_fixture(&common)?;
            let mut report = JsonReport::new("dual", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let start = Instant::now();
            let w = structure_of(&name)?;
            let phi = select_integral(&w, &integral)?;
            let dp = dual_wmha(&w, &phi).map_err(|e| e.to_string())?;
            report.dimension("algebra", w.algebra().dim());
            report.dimension("dual-algebra", dp.dual.algebra().dim());
            let suite = run_dual_suite(&dp);
            print!("{suite}");
            let dual_axioms = dp.dual.run_axiom_suite();
            println!("dual structure suite: {}", if dual_axioms.is_pass() { "pass" } else { "fail" });
            print_timing(start);
            report.add_suite(&suite);
            report.add_suite(&dual_axioms);
            emit(&report, &common.json)
        }
        Command::Smash { common } => {
            let name = require_fixture(&common)?;
            if fixture_kind(&name)? != FixtureKind::Module {
                return Err(format!("`smash` needs a module fixture, `{name}` is not one"));
            }
            let mut report = JsonReport::new("smash", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let start = Instant::now();
            let m = fixtures::build_module(&name).unwrap();
            let module_suite = m.run_module_suite();
            print!("{module_suite}");
            report.add_suite(&module_suite);
            let smash = SmashProduct::new(&m).map_err(|e| format!("{e}"))?;
            report.dimension("smash-carrier", smash.dim());
            report.dimension("coefficient-algebra", m.coeff.dim());
            report.dimension("acting-algebra", m.wmha.algebra().dim());
            println!("smash carrier: dimension {}", smash.dim());
            let smash_suite = smash.run_smash_suite();
            print!("{smash_suite}");
            report.add_suite(&smash_suite);
            let balanced = BalancedTensor::new(&m);
            let bal_check = balanced.check(&smash);
            println!("{bal_check}");
            report.add_check(&bal_check);
            print_timing(start);
            emit(&report, &common.json)
        }
        Command::Duality { common, integral } => {
            let name = require_fixture(&common)?;
            if fixture_kind(&name)? != FixtureKind::Module {
                return Err(format!("`duality` needs a module fixture, `{name}` is not one"));
            }
            let mut report = JsonReport::new("duality", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let start = Instant::now();
            let m = fixtures::build_module(&name).unwrap();
            let phi = select_integral(&m.wmha, &integral)?;
            if !check_faithful(&m.wmha, core::slice::from_ref(&phi)) {
                return Err("selected integral does not span a faithful set".to_string());
            }
            let dp = dual_wmha(&m.wmha, &phi).map_err(|e| e.to_string())?;
            let smash = SmashProduct::new(&m).map_err(|e| format!("{e}"))?;
            let duality = verify_duality_theorem(&smash, &dp).map_err(|e| e.to_string())?;
            println!("dim bi-smash: {}", duality.dim_bismash);
            println!("dim R⊗(A⊗̄Â): {}", duality.dim_rhs);
            println!("operator spans equal: {}", duality.spans_equal);
            println!("isomorphism verified: {}", duality.iso_verified);
            for w in &duality.witnesses {
                println!("  witness: {w}");
            }
            print_timing(start);
            report.set_duality(&duality);
            emit(&report, &common.json)
        }
        Command::Report { common, integral } => {
            let name = require_fixture(&common)?;
            let mut report = JsonReport::new("report", common.seed, common.budget);
            report.fixture = Some(name.clone());
            let start = Instant::now();
            match fixture_kind(&name)? {
                FixtureKind::Lazy => {
                    let w = fixtures::build_lazy(&name, 50).unwrap();
                    let suite = w.run_sampled_suite(common.budget, common.seed);
                    print!("{suite}");
                    report.add_suite(&suite);
                }
                FixtureKind::Structure => {
                    let w = fixtures::build_structure(&name).unwrap();
                    report.dimension("algebra", w.algebra().dim());
                    let suite = w.run_axiom_suite();
                    print!("{suite}");
                    report.add_suite(&suite);
                    let left = find_integrals(&w, Side::Left);
                    report.dimension("left-integral-space", left.len());
                    let phi = select_integral(&w, &integral)?;
                    if check_faithful(&w, core::slice::from_ref(&phi)) {
                        let dp = dual_wmha(&w, &phi).map_err(|e| e.to_string())?;
                        report.dimension("dual-algebra", dp.dual.algebra().dim());
                        let dual_suite = run_dual_suite(&dp);
                        print!("{dual_suite}");
                        report.add_suite(&dual_suite);
                    } else {
                        println!("no faithful integral: dual construction skipped");
                    }
                }
                FixtureKind::Module => {
                    let m = fixtures::build_module(&name).unwrap();
                    report.dimension("acting-algebra", m.wmha.algebra().dim());
                    report.dimension("coefficient-algebra", m.coeff.dim());
                    let base_suite = m.wmha.run_axiom_suite();
                    print!("{base_suite}");
                    report.add_suite(&base_suite);
                    let module_suite = m.run_module_suite();
                    print!("{module_suite}");
                    report.add_suite(&module_suite);
                    let smash = SmashProduct::new(&m).map_err(|e| format!("{e}"))?;
                    report.dimension("smash-carrier", smash.dim());
                    let smash_suite = smash.run_smash_suite();
                    print!("{smash_suite}");
                    report.add_suite(&smash_suite);
                    let phi = select_integral(&m.wmha, &integral)?;
                    if check_faithful(&m.wmha, core::slice::from_ref(&phi)) {
                        let dp = dual_wmha(&m.wmha, &phi).map_err(|e| e.to_string())?;
                        let duality = verify_duality_theorem(&smash, &dp).map_err(|e| e.to_string())?;
                        println!(
                            "duality: dims {}/{}, spans equal: {}, iso: {}",
                            duality.dim_bismash,
                            duality.dim_rhs,
                            duality.spans_equal,
                            duality.iso_verified
                        );
                        report.set_duality(&duality);
                    }
                }
            }
            print_timing(start);
            emit(&report, &common.json)
        }
    }
}

fn summarize_structure(w: &Wmha, report: &mut JsonReport) {
    let dim = w.algebra().dim();
    report.dimension("algebra", dim);
    println!("algebra: dim {dim}");
    let targets = w.target_span();
    let sources = w.source_span();
    report.dimension("target-algebra", targets.len());
    report.dimension("source-algebra", sources.len());
    println!("target algebra ε_t(A): dim {}", targets.len());
    println!("source algebra ε_s(A): dim {}", sources.len());
    let e = w.e_elem();
    report.dimension("e-support", e.len());
    println!("canonical idempotent E: {e}");
}
