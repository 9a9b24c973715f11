use clap::ValueEnum;
use serde_json::{json, Value};

use mtakit::liealg::{AlgebraKind, AlgebraSpec};
use mtakit::mta::{self, IdentityOutcome};
use mtakit::partition::partition_count;
use mtakit::pbw::Pbw;
use mtakit::verma::{Param, VermaModule};
use mtakit::zhu;
use mtakit::Error;

use crate::report::{to_value, Failure, Report};
use crate::{Command, Common, MtaArgs, Verify, VermaArgs, ZhuArgs};

pub fn execute(cmd: &Command) -> Result<(), Failure> {
    let common = match cmd {
        Command::Zhu(a) => &a.common,
        Command::Mta(a) => &a.common,
        Command::Verma(a) => &a.common,
    };
    if let Some(n) = common.jobs {
        if n == 0 {
            return Err(Failure::Config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Config(e.to_string()))?;
    }
    let report = match cmd {
        Command::Zhu(a) => run_zhu(a)?,
        Command::Mta(a) => run_mta(a)?,
        Command::Verma(a) => run_verma(a)?,
    };
    report.emit(common)
}

fn engine(common: &Common) -> Pbw {
    Pbw::new(AlgebraSpec::new(common.algebra)).with_max_terms(common.max_terms)
}

fn config(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

fn check_cap(common: &Common, what: &str, d: u32) -> Result<(), Failure> {
    if common.algebra == AlgebraKind::Heisenberg && d > common.cap {
        return Err(config(format!(
            "{what} {d} exceeds the cap {}; raise it with --cap",
            common.cap
        )));
    }
    Ok(())
}

fn status_word(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "FAILED"
    }
}

fn run_zhu(args: &ZhuArgs) -> Result<Report, Failure> {
    let common = &args.common;
    let pbw = engine(common);
    let mut report = Report::new(
        "zhu",
        json!({"algebra": common.algebra, "level": args.level, "window": args.window}),
    );
    match common.algebra {
        AlgebraKind::Heisenberg => {
            check_cap(common, "level", args.level)?;
            let rep = zhu::verify_heisenberg_structure(&pbw, args.level)?;
            report.line(format!(
                "heisenberg A_{}: rank {} (expected {}) = {}",
                args.level,
                rep.rank,
                rep.expected_rank,
                (0..=args.level)
                    .map(|j| partition_count(j).pow(2).to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            ));
            for layer in &rep.layers {
                report.line(format!(
                    "  layer {}: {}x{} matrix units {}",
                    layer.weight,
                    layer.size,
                    layer.size,
                    status_word(layer.matrix_units_ok)
                ));
                if !layer.matrix_units_ok {
                    report.fail(json!({"layer": layer.weight, "check": "matrix_units"}));
                }
            }
            for (name, ok) in [
                ("idempotents_orthogonal", rep.idempotents_orthogonal),
                ("idempotents_central", rep.idempotents_central),
                ("idempotents_sum_to_one", rep.idempotents_sum_to_one),
                ("cross_layer_products_vanish", rep.cross_layer_products_vanish),
                ("triangular_basis_change", rep.triangular_basis_change),
            ] {
                report.line(format!("  {name}: {}", status_word(ok)));
                if !ok {
                    report.fail(json!({"check": name}));
                }
            }
            if rep.rank as u64 != rep.expected_rank {
                report.fail(json!({"check": "rank", "rank": rep.rank, "expected": rep.expected_rank}));
            }
            report.section("structure", to_value(&rep));
            if args.table {
                report.section("table", to_value(&zhu::multiplication_table(&pbw, args.level)?));
            }
        }
        AlgebraKind::Virasoro => {
            if args.level != 1 {
                return Err(config("virasoro Zhu verification is available at level 1 only"));
            }
            if args.table {
                return Err(config("--table is available for heisenberg only"));
            }
            let rep = zhu::verify_virasoro_level1(args.window)?;
            report.line(format!("virasoro A_1, window {}", rep.window));
            report.line(format!("  [L(1), L(-1)] = 2 L(0): {}", status_word(rep.bracket_ok)));
            report.line(format!(
                "  iterate coefficient of L(-1)L(1): {}",
                rep.iterate_coefficient
            ));
            report.line(format!("  Y~ membership: {}", status_word(rep.ytilde_membership_ok)));
            report.line(format!("  kernel generator: {}", status_word(rep.kernel_generator_ok)));
            let law_ok = rep.product_law.iter().all(|c| c.ok);
            report.line(format!(
                "  product law on {} monomial pairs: {}",
                rep.product_law.len(),
                status_word(law_ok)
            ));
            report.line(format!("  XY = 0 presentation: {}", status_word(rep.presentation_ok)));
            for (name, ok) in [
                ("bracket", rep.bracket_ok),
                ("ytilde_membership", rep.ytilde_membership_ok),
                ("kernel_generator", rep.kernel_generator_ok),
                ("presentation", rep.presentation_ok),
            ] {
                if !ok {
                    report.fail(json!({"check": name}));
                }
            }
            if let Some(c) = rep.product_law.iter().find(|c| !c.ok) {
                report.fail(json!({"check": "product_law", "i": c.i, "j": c.j}));
            }
            report.section("level1", to_value(&rep));
        }
    }
    Ok(report)
}

fn run_mta(args: &MtaArgs) -> Result<Report, Failure> {
    let common = &args.common;
    let pbw = engine(common);
    let mut report = Report::new(
        "mta",
        json!({
            "algebra": common.algebra,
            "degree": args.degree,
            "find_identity": args.find_identity,
            "verify": args.verify.and_then(|v| v.to_possible_value()).map(|p| p.get_name().to_string()),
            "max_level": args.max_level,
            "max_degree": args.max_degree,
            "window": args.window,
        }),
    );
    if !args.find_identity && args.verify.is_none() {
        return Err(config("nothing to do: pass --find-identity or --verify"));
    }
    let need_degree = || args.degree.ok_or_else(|| config("--degree is required"));

    if args.find_identity {
        let d = need_degree()?;
        check_cap(common, "degree", d)?;
        let outcome = mta::find_identity(&pbw, d)?;
        match &outcome {
            IdentityOutcome::Identity { element, verified } => {
                report.line(format!("identity of A_{d}: {element}"));
                report.line(format!("  verified on the basis: {}", status_word(*verified)));
                if !verified {
                    report.fail(json!({"check": "identity", "degree": d}));
                }
            }
            IdentityOutcome::NotPolynomial {
                obstruction,
                numerator,
                denominator,
                unique,
            } => {
                report.line(format!("identity of A_{d}: NONE"));
                report.line(format!(
                    "  coefficient of [{}|{}] forced to ({numerator}) / ({denominator}){}",
                    obstruction.creation,
                    obstruction.annihilation,
                    if *unique { "" } else { " (one solution over C(x))" }
                ));
            }
            IdentityOutcome::Inconsistent { residual } => {
                report.line(format!("identity of A_{d}: NONE (inconsistent, residual {residual})"));
            }
        }
        let mut section = to_value(&outcome);
        match &outcome {
            IdentityOutcome::Identity { element, .. } => section["display"] = json!(element.to_string()),
            IdentityOutcome::NotPolynomial {
                numerator, denominator, ..
            } => {
                section["identity"] = json!("NONE");
                section["certificate"] = json!(format!("({numerator}) / ({denominator})"));
            }
            IdentityOutcome::Inconsistent { .. } => section["identity"] = json!("NONE"),
        }
        report.section("identity", section);
    }

    match args.verify {
        None => {}
        Some(Verify::Structure) => {
            let d = need_degree()?;
            check_cap(common, "degree", d)?;
            let rep = mta::verify_matrix_units(&pbw, d)?;
            report.line(format!(
                "A_{d} = Mat_{}(C[x]): closed form {}, matrix units {}, identity {}",
                rep.size,
                status_word(rep.closed_form_ok),
                status_word(rep.matrix_units_ok),
                status_word(rep.identity_ok)
            ));
            if !rep.ok {
                report.fail(to_value(&rep));
            }
            report.section("structure", to_value(&rep));
        }
        Some(Verify::Splitting) => {
            let d = need_degree()?;
            check_cap(common, "degree", d)?;
            let rep = mta::verify_splitting(&pbw, d)?;
            report.line(format!(
                "level {d}: mu injective {}, image = kernel {}, split {}",
                status_word(rep.mu_injective),
                status_word(rep.image_in_kernel && rep.kernel_in_image),
                match &rep.split {
                    Some(_) => status_word(rep.ok),
                    None => "not attempted (no identity)",
                }
            ));
            if !rep.ok {
                report.fail(to_value(&rep));
            }
            report.section("splitting", to_value(&rep));
        }
        Some(Verify::StrongIdentity) => {
            let d_max = args
                .max_degree
                .or(args.degree)
                .ok_or_else(|| config("--max-degree is required"))?;
            let window = args.window.unwrap_or(d_max);
            check_cap(common, "degree plus window", d_max + window)?;
            match mta::verify_strong_identity(&pbw, d_max, window) {
                Ok(rep) => {
                    report.line(format!(
                        "strong identity, d <= {d_max}, |n| <= {window}: {} transport checks, {} unit checks: {}",
                        rep.checks.len(),
                        rep.unit_checks.len(),
                        status_word(rep.ok)
                    ));
                    if let Some(c) = rep.checks.iter().find(|c| !c.ok) {
                        report.fail(to_value(c));
                    }
                    if let Some(c) = rep.unit_checks.iter().find(|c| !c.ok) {
                        report.fail(to_value(c));
                    }
                    report.section("strong_identity", to_value(&rep));
                }
                Err(Error::MissingIdentity(d)) => {
                    report.line(format!("strong identity: no identity in degree {d}"));
                    report.fail(json!({"missing_identity": d}));
                    report.section("strong_identity", json!({"missing_identity": d}));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Some(Verify::AddabboBarron) => {
            if common.algebra != AlgebraKind::Heisenberg {
                return Err(config("the rank and splitting sweep is available for heisenberg only"));
            }
            let top = args
                .max_level
                .or(args.degree)
                .ok_or_else(|| config("--max-level is required"))?;
            check_cap(common, "level", top)?;
            let mut levels = Vec::new();
            for d in 0..=top {
                let structure = zhu::verify_heisenberg_structure(&pbw, d)?;
                let split = mta::verify_splitting(&pbw, d)?;
                let ok = structure.ok && split.ok && split.split.is_some();
                let shape = if d == 0 {
                    "A_0 = C[x]".to_string()
                } else {
                    format!("A_{d} = Mat_{}(C[x]) x A_{}", partition_count(d), d - 1)
                };
                report.line(format!(
                    "level {d}: rank {} = {}, {shape}: {}",
                    structure.rank,
                    structure.expected_rank,
                    status_word(ok)
                ));
                if !ok {
                    report.fail(json!({"level": d, "rank": structure.rank, "expected_rank": structure.expected_rank}));
                }
                levels.push(json!({
                    "level": d,
                    "rank": structure.rank,
                    "expected_rank": structure.expected_rank,
                    "structure_ok": structure.ok,
                    "splitting": to_value(&split),
                    "ok": ok,
                }));
            }
            report.section("levels", Value::Array(levels));
        }
    }
    Ok(report)
}

fn run_verma(args: &VermaArgs) -> Result<Report, Failure> {
    let common = &args.common;
    let pbw = engine(common);
    let (module, params) = match common.algebra {
        AlgebraKind::Heisenberg => {
            if args.h.is_some() || args.c.is_some() {
                return Err(config("--h and --c apply to virasoro; use --lambda"));
            }
            let lambda = args.lambda.clone().unwrap_or(Param::Formal);
            let params = json!({"algebra": common.algebra, "lambda": lambda});
            (VermaModule::with_engine(pbw, lambda, Param::Formal), params)
        }
        AlgebraKind::Virasoro => {
            if args.lambda.is_some() {
                return Err(config("--lambda applies to heisenberg; use --h and --c"));
            }
            let h = args.h.clone().unwrap_or(Param::Formal);
            let c = args.c.clone().unwrap_or(Param::Formal);
            let params = json!({"algebra": common.algebra, "h": h, "c": c});
            (VermaModule::with_engine(pbw, h, c), params)
        }
    };
    let degrees: Vec<u32> = match (args.degree, args.max_degree) {
        (Some(d), None) => vec![d],
        (None, Some(m)) => (if args.singular { 1 } else { 0 }..=m).collect(),
        (Some(_), Some(_)) => return Err(config("pass either --degree or --max-degree")),
        (None, None) => return Err(config("--degree or --max-degree is required")),
    };
    if let Some(&top) = degrees.last() {
        check_cap(common, "degree", top)?;
    }
    if args.unital && common.algebra != AlgebraKind::Heisenberg {
        return Err(config("--unital needs identities, which exist for heisenberg only"));
    }
    if args.singular && degrees.contains(&0) {
        return Err(config("singular vectors live in positive degree"));
    }

    let mut params = params;
    params["singular"] = json!(args.singular);
    params["unital"] = json!(args.unital);
    let mut report = Report::new("verma", params);
    let mut entries = Vec::new();
    for &d in &degrees {
        let mut entry = json!({"degree": d, "dimension": module.dimension(d)});
        let mut line = format!("degree {d}: dimension {}", module.dimension(d));
        let mut extra = Vec::new();
        if args.singular {
            let kernel = module.singular_vectors(d)?;
            line.push_str(&format!(", singular vectors {}", kernel.len()));
            entry["kernel_dim"] = json!(kernel.len());
            entry["kernel_basis"] = to_value(&kernel);
            for v in &kernel {
                extra.push(format!("  singular: {v}"));
            }
        }
        if args.unital {
            let ident = mta::find_identity(module.engine(), d)?;
            let ok = match ident.element() {
                Some(e) => {
                    let mut ok = true;
                    for w in module.basis(d) {
                        let v = module.basis_vector(w);
                        ok &= module.mta_act(e, &v)? == v;
                    }
                    ok
                }
                None => false,
            };
            line.push_str(&format!(", identity acts as 1: {}", status_word(ok)));
            entry["unital"] = json!(ok);
            if !ok {
                report.fail(json!({"degree": d, "check": "unital"}));
            }
        }
        report.line(line);
        for l in extra {
            report.line(l);
        }
        entries.push(entry);
    }
    report.section("degrees", Value::Array(entries));
    Ok(report)
}
