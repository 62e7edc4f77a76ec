use reflexive_core::algebra::{
    check_module_map, ground_algebra, loday_module, matrix_algebra, matrix_morita_data, trace_map,
    validate_morita_data,
};
use reflexive_core::groups::{decomposition_check, hr_group, linearize};
use reflexive_core::linalg::{HomologyGroup, Matrix, Ring};
use reflexive_core::oracles::{hr_ground_ring_closed_form, hr_tensor_algebra_closed_form, hr_tensor_algebra_direct};
use reflexive_core::reflexive::{
    hochschild_homology, hr, hr_quotient_of_module, hyper_hr, DeltaRModule, ReflexiveChainComplex,
};
use reflexive_core::suite::{run_all, run_criterion, CRITERIA};
use reflexive_core::validation::{compare_homology, Check, Violation};

use crate::input::{self, parse_ring, Document};
use crate::report::{DegreeRecord, Report, Section};
use crate::{Cli, CliError, Command, Method, SignArg};

fn compute_err(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

fn load(cli: &Cli) -> Result<Option<Document>, CliError> {
    cli.input.as_deref().map(input::read).transpose()
}

fn ring_for(cli: &Cli, doc: Option<&Document>) -> Result<Ring, CliError> {
    match (&cli.ring, doc.and_then(Document::ring)) {
        (Some(s), _) => parse_ring(s),
        (None, Some(spec)) => spec.resolve(),
        (None, None) => Ok(Ring::Integers),
    }
}

fn joined(vs: &[Violation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn require_plus(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.sign == SignArg::Minus {
        return Err(CliError::Parse(format!("{what} is only available for --sign plus")));
    }
    Ok(())
}

/// The object a module-level command works on: its display name and the
/// module with `levels` levels.
struct Subject {
    name: String,
    module: DeltaRModule,
}

fn subject(cli: &Cli, doc: Option<Document>, ring: Ring, sign: i8, levels: usize) -> Result<Subject, CliError> {
    let doc = match doc {
        None => {
            let a = ground_algebra(ring);
            let module = loday_module(&a, &a.regular_bimodule(), sign, levels).map_err(compute_err)?;
            return Ok(Subject {
                name: ring.symbol(),
                module,
            });
        }
        Some(d) => d,
    };
    let name = cli
        .input
        .as_ref()
        .and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match doc {
        Document::Algebra(d) => {
            let (a, m) = d.build(ring)?;
            let invalid = |bad: Vec<Violation>| CliError::Invalid(bad.iter().map(ToString::to_string).collect());
            let bad = a.validate();
            if !bad.is_empty() {
                return Err(invalid(bad));
            }
            let m = m.unwrap_or_else(|| a.regular_bimodule());
            let bad = m.validate(&a);
            if !bad.is_empty() {
                return Err(invalid(bad));
            }
            let module = loday_module(&a, &m, sign, levels).map_err(compute_err)?;
            Ok(Subject { name, module })
        }
        Document::Set(d) => {
            let x = d.build()?;
            if x.max_level() < levels {
                return Err(CliError::Parse(format!(
                    "reflexive set stops at level {}, need {levels}",
                    x.max_level()
                )));
            }
            let bad = x.validate();
            if !bad.is_empty() {
                return Err(CliError::Invalid(bad.iter().map(ToString::to_string).collect()));
            }
            Ok(Subject {
                name,
                module: linearize(&x, ring).with_sign(sign),
            })
        }
        other => Err(CliError::Parse(format!("expected an algebra or a reflexive set, got a {}", other.kind()))),
    }
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Compute => compute(cli),
        Command::Validate => validate(cli),
        Command::Group => group(cli),
        Command::Tensor => tensor(cli),
        Command::Morita => morita(cli),
        Command::Hyper => hyper(cli),
        Command::Suite { criterion } => suite(*criterion),
    }
}

/// `dim_Fp H_n = rank H_n + #p-torsion of H_n and H_(n-1)`.
fn uct_checks(f: &DeltaRModule, integral: &[HomologyGroup], n_max: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let q = hr(&f.change_ring(Ring::Rationals).map_err(compute_err)?, n_max).map_err(compute_err)?;
    let ranks: Vec<usize> = integral.iter().map(|g| g.free_rank).collect();
    let q_ranks: Vec<usize> = q.iter().map(|g| g.free_rank).collect();
    checks.push(Check::new("rank over Z = dimension over Q", ranks == q_ranks, format!("{ranks:?} vs {q_ranks:?}")));
    for p in [2u64, 3] {
        let fp = hr(&f.change_ring(Ring::PrimeField(p)).map_err(compute_err)?, n_max).map_err(compute_err)?;
        let got: Vec<usize> = fp.iter().map(|g| g.free_rank).collect();
        let want: Vec<usize> = (0..=n_max)
            .map(|n| {
                let below = if n == 0 { 0 } else { integral[n - 1].torsion_divisible_by(p) };
                integral[n].free_rank + integral[n].torsion_divisible_by(p) + below
            })
            .collect();
        checks.push(Check::new(
            format!("universal coefficients over F{p}"),
            got == want,
            format!("{got:?} vs {want:?}"),
        ));
    }
    Ok(checks)
}

fn compute(cli: &Cli) -> Result<Report, CliError> {
    let doc = load(cli)?;
    let ring = ring_for(cli, doc.as_ref())?;
    let n_max = cli.max_degree.unwrap_or(4);
    let sign = cli.sign.value();
    if cli.method != Method::Bicomplex && !ring.two_invertible() {
        return Err(CliError::Parse(format!(
            "--method {} needs a field in which 2 is invertible, got {}",
            if cli.method == Method::Both { "both" } else { "quotient" },
            ring.symbol()
        )));
    }
    let is_ground = doc.is_none();
    let s = subject(cli, doc, ring, sign, n_max + 1)?;
    let label = format!("HR{}_n({}) over {}", cli.sign.label(), s.name, ring.symbol());
    let mut report = Report::new("compute", ring.symbol());
    report.sign = Some(cli.sign.label().into());

    let bicomplex = match cli.method {
        Method::Quotient => None,
        _ => Some(hr(&s.module, n_max).map_err(compute_err)?),
    };
    let quotient = match cli.method {
        Method::Bicomplex => None,
        _ => Some(hr_quotient_of_module(&s.module, n_max).map_err(compute_err)?),
    };
    if let Some(h) = &bicomplex {
        report.sections.push(Section::new(format!("{label} [bicomplex]"), h));
    }
    if let Some(h) = &quotient {
        report.sections.push(Section::new(format!("{label} [quotient]"), h));
    }
    if let (Some(b), Some(q)) = (&bicomplex, &quotient) {
        report.checks.push(compare_homology("bicomplex = quotient complex", b, q));
    }
    let main = bicomplex.as_ref().or(quotient.as_ref()).expect("some method ran");

    if cli.cross_check {
        if is_ground {
            report.checks.push(compare_homology(
                "closed form for the ground ring",
                main,
                &hr_ground_ring_closed_form(ring, sign, n_max),
            ));
        }
        if ring == Ring::Integers {
            report.checks.extend(uct_checks(&s.module, main, n_max)?);
        }
        if ring.two_invertible() {
            let other = hr(&s.module.with_sign(-1), n_max).map_err(compute_err)?;
            let hh = hochschild_homology(&s.module, n_max).map_err(compute_err)?;
            for n in 0..=n_max {
                let (a, b, h) = (main[n].free_rank, other[n].free_rank, hh[n].free_rank);
                report.checks.push(Check::new(
                    format!("degree {n}: dim HR+ + dim HR- = dim HH"),
                    a + b == h,
                    format!("{a} + {b} vs {h}"),
                ));
            }
            if bicomplex.is_none() || quotient.is_none() {
                let other_route = if bicomplex.is_some() {
                    hr_quotient_of_module(&s.module, n_max)
                } else {
                    hr(&s.module, n_max)
                }
                .map_err(compute_err)?;
                report.checks.push(compare_homology("bicomplex = quotient complex", main, &other_route));
            }
        }
    }
    Ok(report)
}

fn validate(cli: &Cli) -> Result<Report, CliError> {
    let doc = load(cli)?.ok_or_else(|| CliError::Parse("validate needs --input".into()))?;
    let ring = ring_for(cli, Some(&doc))?;
    let kind = doc.kind();
    let mut report = Report::new("validate", ring.symbol());
    match doc {
        Document::Algebra(d) => {
            let (a, m) = d.build(ring)?;
            report.violations = a.validate();
            let mut checks = vec![Check::new("algebra axioms", report.violations.is_empty(), joined(&report.violations))];
            if let Some(m) = m {
                let bad = m.validate(&a);
                checks.push(Check::new("bimodule axioms", bad.is_empty(), joined(&bad)));
                report.violations.extend(bad);
            }
            report.checks = checks;
        }
        Document::Group(d) => {
            report.ring = "-".into();
            match d.build() {
                Ok(g) => report.checks.push(Check::new("group axioms", true, format!("order {}", g.order()))),
                Err(e) => {
                    let msg = e.to_string();
                    report.violations.push(Violation::new("group axioms", msg.clone()));
                    report.checks.push(Check::new("group axioms", false, msg));
                }
            }
        }
        Document::Set(d) => {
            let x = d.build()?;
            report.violations = x.validate();
            report.checks.push(Check::new("reflexive set identities", report.violations.is_empty(), joined(&report.violations)));
        }
        Document::Tensor(d) => {
            let inv = d.involution()?.reduce(ring).map_err(|e| CliError::Parse(e.to_string()))?;
            let ok = inv.mul_in(&inv, ring).map_err(compute_err)?.is_identity();
            if !ok {
                report.violations.push(Violation::new("involution squares to identity", "sigma * sigma != 1"));
            }
            report.checks.push(Check::new("involution squares to identity", ok, ""));
        }
    }
    report.summary = Some(if report.passed() { format!("valid {kind}") } else { format!("invalid {kind}") });
    Ok(report)
}

fn group(cli: &Cli) -> Result<Report, CliError> {
    let doc = load(cli)?.ok_or_else(|| CliError::Parse("group needs --input".into()))?;
    let ring = ring_for(cli, Some(&doc))?;
    let Document::Group(d) = doc else {
        return Err(CliError::Parse(format!("expected a group table, got a {}", doc.kind())));
    };
    let g = d.build()?;
    let n_max = cli.max_degree.unwrap_or(3);
    let mut report = Report::new("group", ring.symbol());
    report.sign = Some(cli.sign.label().into());
    let s = cli.sign.label();
    if cli.sign == SignArg::Plus {
        let h = hr_group(&g, ring, n_max).map_err(compute_err)?;
        report.sections.push(Section::new(format!("HR{s}_n(G) over {}, |G| = {}", ring.symbol(), g.order()), &h));
    } else {
        let f = linearize(&reflexive_core::groups::bar_reflexive_set(&g, n_max + 1), ring).with_sign(-1);
        let h = hr(&f, n_max).map_err(compute_err)?;
        report.sections.push(Section::new(format!("HR{s}_n(G) over {}, |G| = {}", ring.symbol(), g.order()), &h));
    }
    if cli.decompose {
        require_plus(cli, "--decompose")?;
        let d = decomposition_check(&g, ring, n_max).map_err(compute_err)?;
        report.sections.push(Section::new("HR+_n(k[G])", &d.group_algebra));
        for orbit in &d.orbits {
            let reps: Vec<&str> = orbit.representatives.iter().map(|&z| g.labels()[z].as_str()).collect();
            report.sections.push(Section::new(format!("class orbit <{}>", reps.join(">, <")), &orbit.homology));
        }
        let failed = d.checks.iter().filter(|c| !c.passed).count();
        report.summary = Some(if failed == 0 {
            "decomposition verified".to_string()
        } else {
            format!("decomposition failed: {failed} of {} checks", d.checks.len())
        });
        report.checks = d.checks;
    }
    Ok(report)
}

fn tensor(cli: &Cli) -> Result<Report, CliError> {
    require_plus(cli, "tensor")?;
    let doc = load(cli)?;
    let ring = ring_for(cli, doc.as_ref())?;
    let (v, inv) = match doc {
        None => (1, Matrix::identity(1)),
        Some(Document::Tensor(d)) => (d.dim, d.involution()?),
        Some(other) => return Err(CliError::Parse(format!("expected tensor generators, got a {}", other.kind()))),
    };
    let (n_max, w_max) = (cli.max_degree.unwrap_or(3), cli.max_weight.unwrap_or(3));
    let oracle = hr_tensor_algebra_closed_form(v, &inv, ring, n_max, w_max).map_err(|e| match e {
        reflexive_core::reflexive::EngineError::NotInvolution => CliError::Invalid(vec![e.to_string()]),
        other => compute_err(other),
    })?;
    let mut report = Report::new("tensor", ring.symbol());
    report.sign = Some("+".into());
    let records = |t: &reflexive_core::oracles::GradedHomologyTable| -> Vec<DegreeRecord> {
        t.entries().iter().map(|e| DegreeRecord::weighted(e.n, e.q, &e.group)).collect()
    };
    report.sections.push(Section {
        label: format!("HR+_n(T(k^{v}))_q over {} [closed form]", ring.symbol()),
        degrees: records(&oracle.table),
    });
    // calibration tries both conventions; only the selected one has to match
    let chosen = format!("{:?} t,", oracle.convention);
    report.checks = oracle.calibration.iter().filter(|c| c.name.starts_with(&chosen)).cloned().collect();
    if cli.cross_check {
        let direct = hr_tensor_algebra_direct(v, &inv, ring, n_max, w_max).map_err(compute_err)?;
        report.sections.push(Section {
            label: format!("HR+_n(T(k^{v}))_q over {} [weight-graded bicomplex]", ring.symbol()),
            degrees: records(&direct),
        });
        for q in 0..=w_max {
            let lhs: Vec<HomologyGroup> = (0..=n_max).map(|n| oracle.table.get(n, q)).collect();
            let rhs: Vec<HomologyGroup> = (0..=n_max).map(|n| direct.get(n, q)).collect();
            report.checks.push(compare_homology(format!("weight {q}: closed form = direct"), &lhs, &rhs));
        }
    }
    Ok(report)
}

fn morita(cli: &Cli) -> Result<Report, CliError> {
    let doc = load(cli)?;
    let ring = ring_for(cli, doc.as_ref())?;
    let (name, a) = match doc {
        None => (ring.symbol(), ground_algebra(ring)),
        Some(Document::Algebra(d)) => {
            let name = cli.input.as_ref().and_then(|p| p.file_stem()).map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let (a, m) = d.build(ring)?;
            if m.is_some() {
                return Err(CliError::Parse("morita works with the regular bimodule; drop the bimodule field".into()));
            }
            let bad = a.validate();
            if !bad.is_empty() {
                return Err(CliError::Invalid(bad.iter().map(ToString::to_string).collect()));
            }
            (name, a)
        }
        Some(other) => return Err(CliError::Parse(format!("expected an algebra, got a {}", other.kind()))),
    };
    let m = cli.matrix_size;
    if m == 0 {
        return Err(CliError::Parse("--matrix-size must be positive".into()));
    }
    let n_max = cli.max_degree.unwrap_or(2);
    let sign = cli.sign.value();
    let s = cli.sign.label();
    let big = matrix_algebra(&a, m).map_err(compute_err)?;
    let levels = (n_max + 1).max(3);
    let fa = loday_module(&a, &a.regular_bimodule(), sign, levels).map_err(compute_err)?;
    let fm = loday_module(&big, &big.regular_bimodule(), sign, levels).map_err(compute_err)?;
    let ha = hr(&fa, n_max).map_err(compute_err)?;
    let hm = hr(&fm, n_max).map_err(compute_err)?;
    let mut report = Report::new("morita", ring.symbol());
    report.sign = Some(s.into());
    report.sections.push(Section::new(format!("HR{s}_n(M{m}({name}))"), &hm));
    report.sections.push(Section::new(format!("HR{s}_n({name})"), &ha));
    report.checks.push(compare_homology(format!("HR{s}(M{m}({name})) = HR{s}({name})"), &hm, &ha));
    let bad = check_module_map(&fm.truncated(3), &fa.truncated(3), &trace_map(&a, m, 3));
    report.checks.push(Check::new("trace map commutes with every operator, levels <= 3", bad.is_empty(), joined(&bad)));
    let data = matrix_morita_data(&a, m).map_err(compute_err)?;
    let bad = validate_morita_data(&data);
    report.checks.push(Check::new("Hermitian Morita data validates", bad.is_empty(), joined(&bad)));
    Ok(report)
}

fn hyper(cli: &Cli) -> Result<Report, CliError> {
    let doc = load(cli)?;
    let ring = ring_for(cli, doc.as_ref())?;
    let n_max = cli.max_degree.unwrap_or(3);
    let s = subject(cli, doc, ring, cli.sign.value(), n_max + 1)?;
    let f = s.module;
    let direct = hr(&f, n_max).map_err(compute_err)?;
    let concentrated = hyper_hr(&ReflexiveChainComplex::concentrated(f.clone()), n_max).map_err(compute_err)?;
    let zeros = (0..=f.max_level()).map(|n| Matrix::zeros(f.rank(n), f.rank(n))).collect();
    let split = ReflexiveChainComplex::new(vec![f.clone(), f.clone()], vec![zeros]).map_err(compute_err)?;
    let two = hyper_hr(&split, n_max).map_err(compute_err)?;
    let expected: Vec<HomologyGroup> = (0..=n_max)
        .map(|n| if n == 0 { direct[0].clone() } else { direct[n].direct_sum(&direct[n - 1]) })
        .collect();
    let sign = cli.sign.label();
    let mut report = Report::new("hyper", ring.symbol());
    report.sign = Some(sign.into());
    report.sections.push(Section::new(format!("HR{sign}_n({})", s.name), &direct));
    report.sections.push(Section::new("hyperhomology, concentrated in degree 0", &concentrated));
    report.sections.push(Section::new("hyperhomology, two copies with zero differential", &two));
    report.checks.push(compare_homology("concentrated complex = HR", &concentrated, &direct));
    report.checks.push(compare_homology("two-copy complex = HR_n + HR_(n-1)", &two, &expected));
    Ok(report)
}

fn suite(criterion: Option<usize>) -> Result<Report, CliError> {
    let outcomes = match criterion {
        Some(id) if (1..=CRITERIA.len()).contains(&id) => vec![run_criterion(id)],
        Some(id) => return Err(CliError::Parse(format!("no criterion {id}; choose 1..={}", CRITERIA.len()))),
        None => run_all(),
    };
    let mut report = Report::new("suite", "mixed");
    for o in &outcomes {
        for c in &o.checks {
            report.checks.push(Check::new(format!("criterion {}: {}", o.id, c.name), c.passed, c.detail.clone()));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    report.summary = Some(format!("{passed} of {} criteria passed", outcomes.len()));
    Ok(report)
}
