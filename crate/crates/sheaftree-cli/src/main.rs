//! Command-line driver: validate instances, compute cohomology, run the
//! certified decomposition, generate random instances, and run the
//! property suites.
//!
//! Exit codes: 0 success, 1 invalid input, 2 hypothesis violated
//! (H⁰ not irreducible), 3 certification failed, 4 internal assertion.

use clap::{Parser, Subcommand};
use serde_json::json;
use sheaftree::decompose::{
    induction_decompose, verify_decomposition, DecomposeError, DecompositionResult,
};
use sheaftree::generate::{
    catalog, random_equivariant, random_multifacial_sheaf, random_no_elliptic_sheaf, random_sheaf,
    random_tree, Rng,
};
use sheaftree::instance::{
    instance_digest, parse_field_flag, parse_instance, serialize_instance, Instance,
};
use sheaftree::rep::{is_invariant_subspace, is_irreducible, Irreducibility};
use sheaftree::report::{certificate_json, decomposition_json, hypothesis_evidence_json, Report};
use sheaftree::selftest::{run_selftest, total_checks};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_CERTIFICATION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "sheaftree",
    about = "Exact cohomology of equivariant cellular sheaves on finite trees",
    version
)]
struct Cli {
    /// Emit the human-readable text report instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Emit the machine-readable JSON report (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Also write the output to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and fully validate an instance file.
    Validate { instance: PathBuf },
    /// Cohomology dimensions, the Euler check, and the H0 character.
    Cohomology { instance: PathBuf },
    /// Decompose an irreducible H0 as an induced representation, with an
    /// exact certificate.
    Decompose { instance: PathBuf },
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_stalk_dim: usize,
        /// Where to write a reproducing instance if a property fails.
        #[arg(long, default_value = "selftest-failure.json")]
        dump: PathBuf,
    },
    /// Emit a random valid instance on stdout.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient field: Q or Fp:P with P prime.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_stalk_dim: usize,
        /// Constrain the elliptic subsheaf to vanish.
        #[arg(long)]
        no_elliptic: bool,
        /// Constrain the instance to be multifacial.
        #[arg(long)]
        multifacial: bool,
        /// Draw a catalog group action and emit an equivariant instance.
        #[arg(long)]
        equivariant: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match &cli.command {
        Command::Validate { instance } => run_report(&cli, instance, cmd_validate),
        Command::Cohomology { instance } => run_report(&cli, instance, cmd_cohomology),
        Command::Decompose { instance } => run_report(&cli, instance, cmd_decompose),
        Command::Selftest {
            seed,
            count,
            max_vertices,
            max_stalk_dim,
            dump,
        } => cmd_selftest(&cli, *seed, *count, *max_vertices, *max_stalk_dim, dump),
        Command::Random {
            seed,
            field,
            max_vertices,
            max_stalk_dim,
            no_elliptic,
            multifacial,
            equivariant,
        } => cmd_random(
            *seed,
            field,
            *max_vertices,
            *max_stalk_dim,
            *no_elliptic,
            *multifacial,
            *equivariant,
        ),
    };
    print!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INVALID);
        }
    }
    ExitCode::from(code)
}

fn render(cli: &Cli, report: &Report) -> String {
    if cli.pretty {
        report.to_pretty()
    } else {
        report.to_json()
    }
}

fn run_report(
    cli: &Cli,
    path: &Path,
    body: fn(&Instance, &mut Report) -> u8,
) -> (String, u8) {
    let command = match &cli.command {
        Command::Validate { .. } => "validate",
        Command::Cohomology { .. } => "cohomology",
        Command::Decompose { .. } => "decompose",
        _ => unreachable!(),
    };
    let mut report = Report::new(command, String::new());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.set("error", json!(format!("cannot read {}: {e}", path.display())));
            report.exit_status = EXIT_INVALID as i32;
            return (render(cli, &report), EXIT_INVALID);
        }
    };
    let instance = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            report.set("error", json!(e.to_string()));
            report.exit_status = EXIT_INVALID as i32;
            return (render(cli, &report), EXIT_INVALID);
        }
    };
    report.instance_digest = instance_digest(&instance);
    let code = body(&instance, &mut report);
    report.exit_status = code as i32;
    (render(cli, &report), code)
}

fn cmd_validate(instance: &Instance, report: &mut Report) -> u8 {
    let s = &instance.sheaf;
    report.set(
        "summary",
        json!({
            "vertices": s.tree().n_vertices(),
            "edges": s.tree().n_edges(),
            "total_vertex_dim": s.total_vdim(),
            "total_edge_dim": s.total_edim(),
            "group_order": instance.equivariant.as_ref().map(|es| es.group().order()),
        }),
    );
    report.set("valid", json!(true));
    EXIT_OK
}

fn cmd_cohomology(instance: &Instance, report: &mut Report) -> u8 {
    let s = &instance.sheaf;
    let coh = s.cohomology();
    let (lhs, rhs) = s.euler_check();
    report.set(
        "cohomology",
        json!({ "h0_dim": coh.h0_dim, "h1_dim": coh.h1_dim }),
    );
    report.assert_outcome("euler_identity", lhs == rhs, format!("{lhs} = {rhs}"));
    if let Some(es) = &instance.equivariant {
        match es.rep_on_h0() {
            Ok(rho) => {
                let field = es.field();
                let chi: Vec<String> = rho
                    .character()
                    .into_iter()
                    .map(|(_, t)| field.render(&t))
                    .collect();
                report.set("h0_character", json!(chi));
            }
            Err(e) => {
                report.set("error", json!(e.to_string()));
                return EXIT_INTERNAL;
            }
        }
    }
    if lhs != rhs {
        return EXIT_INTERNAL;
    }
    EXIT_OK
}

fn decompose_error_code(e: &DecomposeError) -> u8 {
    match e {
        DecomposeError::HypothesisViolated(_) => EXIT_HYPOTHESIS,
        DecomposeError::CertificationFailed(_) => EXIT_CERTIFICATION,
        _ => EXIT_INTERNAL,
    }
}

fn cmd_decompose(instance: &Instance, report: &mut Report) -> u8 {
    let Some(es) = &instance.equivariant else {
        report.set("error", json!("decompose requires an instance with a group section"));
        return EXIT_INVALID;
    };
    let field = es.field();
    let rho = match es.rep_on_h0() {
        Ok(r) => r,
        Err(e) => {
            report.set("error", json!(e.to_string()));
            return EXIT_INTERNAL;
        }
    };
    report.set("h0_dim", json!(rho.dim()));

    // the irreducibility pre-check is recorded; No is a hypothesis
    // violation, Inconclusive proceeds with a warning
    let irr = is_irreducible(&rho);
    match &irr {
        Irreducibility::Yes => report.set("irreducibility", json!({ "status": "yes" })),
        Irreducibility::Inconclusive(why) => {
            report.set(
                "irreducibility",
                json!({ "status": "inconclusive", "warning": why }),
            );
        }
        Irreducibility::No(witness) => {
            if rho.dim() == 0 {
                // dimension zero is "not irreducible" by convention but is
                // exactly the theorem's H0 = 0 case; fall through
                report.set("irreducibility", json!({ "status": "zero" }));
            } else {
                let invariant = is_invariant_subspace(&rho, witness);
                report.set(
                    "irreducibility",
                    json!({
                        "status": "no",
                        "witness": sheaftree::report::subspace_json(field, witness),
                    }),
                );
                report.assert_outcome(
                    "reducibility_witness_invariant",
                    invariant,
                    format!("dim {}", witness.dim()),
                );
                report.set(
                    "hypothesis_evidence",
                    json!({
                        "reason": "H0 has a proper nonzero invariant subspace",
                        "witness": sheaftree::report::subspace_json(field, witness),
                    }),
                );
                return EXIT_HYPOTHESIS;
            }
        }
    }

    let result: DecompositionResult = match induction_decompose(es) {
        Ok(r) => r,
        Err(e) => {
            let code = decompose_error_code(&e);
            if let DecomposeError::HypothesisViolated(ev) = &e {
                let invariant = ev.witness.dim() > 0 && is_invariant_subspace(&rho, &ev.witness);
                report.assert_outcome(
                    "hypothesis_witness_invariant",
                    invariant,
                    format!("dim {}", ev.witness.dim()),
                );
                report.set("hypothesis_evidence", hypothesis_evidence_json(field, ev));
            } else {
                report.set("error", json!(e.to_string()));
            }
            return code;
        }
    };
    report.set("decomposition", decomposition_json(&result));

    match verify_decomposition(es, &result) {
        Ok(cert) => {
            // re-check the intertwiner equation for every group element
            let equation_holds = cert.h0_rep.elements().iter().all(|&g| {
                cert.induced.rho(g).mul(&cert.intertwiner)
                    == cert.intertwiner.mul(cert.h0_rep.rho(g))
            });
            report.assert_outcome(
                "certificate_equation",
                equation_holds,
                "rho_ind(g)·A = A·rho_H0(g) for all g",
            );
            report.assert_outcome(
                "certificate_invertible",
                !cert.determinant.is_zero(),
                format!("det = {}", field.render(&cert.determinant)),
            );
            report.set("certificate", certificate_json(field, &cert));
            report.set(
                "induced_character",
                json!(cert
                    .induced
                    .character()
                    .into_iter()
                    .map(|(_, t)| field.render(&t))
                    .collect::<Vec<_>>()),
            );
            if !equation_holds || cert.determinant.is_zero() {
                return EXIT_INTERNAL;
            }
            EXIT_OK
        }
        Err(e) => {
            let code = decompose_error_code(&e);
            report.set("error", json!(e.to_string()));
            code
        }
    }
}

fn cmd_selftest(
    cli: &Cli,
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_stalk_dim: usize,
    dump: &Path,
) -> (String, u8) {
    let result = run_selftest(seed, count, max_vertices, max_stalk_dim);
    let mut report = Report::new("selftest", format!("seed:{seed}"));
    report.set(
        "summary",
        json!({
            "seed": seed,
            "count": count,
            "total_checks": total_checks(&result),
            "suites": result
                .suites
                .iter()
                .map(|s| json!({ "name": s.name, "passed": s.passed, "failed": s.failed }))
                .collect::<Vec<_>>(),
        }),
    );
    for s in &result.suites {
        report.assert_outcome(&s.name, s.failed == 0, format!("{} passed", s.passed));
    }
    let code = if result.all_passed() { EXIT_OK } else { EXIT_INTERNAL };
    if let Some(first) = result.failures.first() {
        report.set(
            "first_failure",
            json!({ "suite": first.suite, "detail": first.detail }),
        );
        if let Some(instance) = &first.instance {
            if let Err(e) = std::fs::write(dump, instance) {
                eprintln!("error: cannot write {}: {e}", dump.display());
            } else {
                report.set("reproducer", json!(dump.display().to_string()));
            }
        }
    }
    report.exit_status = code as i32;
    (render(cli, &report), code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_random(
    seed: u64,
    field_flag: &str,
    max_vertices: usize,
    max_stalk_dim: usize,
    no_elliptic: bool,
    multifacial: bool,
    equivariant: bool,
) -> (String, u8) {
    let field = match parse_field_flag(field_flag) {
        Ok(f) => f,
        Err(e) => return (format!("error: {e}\n"), EXIT_INVALID),
    };
    let picked = [no_elliptic, multifacial, equivariant]
        .iter()
        .filter(|&&b| b)
        .count();
    if picked > 1 {
        return (
            "error: constraints are infeasible: pick at most one of --no-elliptic, --multifacial, --equivariant\n"
                .to_string(),
            EXIT_INVALID,
        );
    }
    let mut rng = Rng::new(seed);
    let instance = if equivariant {
        let entries = catalog();
        let entry = &entries[rng.below(entries.len())];
        Instance::from_equivariant(random_equivariant(&mut rng, entry, field, max_stalk_dim))
    } else {
        let tree = random_tree(&mut rng, max_vertices);
        let sheaf = if no_elliptic {
            random_no_elliptic_sheaf(&mut rng, &tree, field, max_stalk_dim)
        } else if multifacial {
            random_multifacial_sheaf(&mut rng, &tree, field, max_stalk_dim)
        } else {
            random_sheaf(&mut rng, &tree, field, max_stalk_dim)
        };
        Instance::from_sheaf(sheaf)
    };
    (serialize_instance(&instance), EXIT_OK)
}
