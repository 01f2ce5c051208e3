use std::path::Path;
use std::sync::Arc;

use omega_nerve::adc::{contraction_h, ChainHomotopy};
use omega_nerve::chain::{BasisKey, GradedChain};
use omega_nerve::nerves::{
    base_point, classical_nerve, comma_nerve, cylinder_nerve, dold_kan_em, homomorphism_map,
    kmn_nerve, kmn_to_classical, parse_window, slice_nerve, thomason_proxy, FiniteCategorySpec,
    LabelingNerve, MonoidSpec,
};
use omega_nerve::operator::Monotone;
use omega_nerve::orientals::{oriental, verify_contraction_square, SquareReport};
use omega_nerve::simplicial::{
    check_sdr, homology, point, seeded_vertex_instances, sset_from_json, sset_to_json,
    vertex_instance, HomologyResult, SdrTriple, SimplicialMap, SimplicialTruncation,
};
use serde_json::{json, Value};

use crate::report::{Check, CliError, CliResult, Report};
use crate::{
    AppendixArgs, Cli, Command, CompareArgs, Comparison, Format, HomologyArgs, Nerve, NerveArgs,
    Oriental, Outcome, SdrArgs, Verify,
};

const MAX_M: usize = 6;
const MAX_P: usize = 4;
const MAX_D: usize = 6;
/// Largest estimated number of top-degree simplices built without --force.
const MAX_CELLS: f64 = 1e6;

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let report = match &cli.command {
        Command::Verify(v) => verify(cli, v)?,
        Command::Nerve(n) => nerve(cli, n)?,
        Command::Compare(a) => compare(cli, a)?,
        Command::Homology(a) => homology_file(cli, a)?,
        Command::Schema { name } => return schema(name.as_deref()).map(Outcome::Raw),
        Command::Oriental(Oriental::Atoms { n, emit }) => return oriental_atoms(cli, *n, *emit),
    };
    Ok(Outcome::Report(report))
}

fn echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("omega-nerve {}", args.join(" "))
}

fn bound(cli: &Cli, what: &str, value: usize, max: usize) -> CliResult<()> {
    if value > max && !cli.force {
        return Err(CliError::Guard(format!(
            "{what} = {value} exceeds the default bound {max}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Rejects enumerations whose estimated top-degree size `|M|^exponent`
/// exceeds the guard.
fn estimate(cli: &Cli, size: usize, exponent: f64, what: &str) -> CliResult<()> {
    let cells = (size as f64).powf(exponent);
    if cells > MAX_CELLS && !cli.force {
        return Err(CliError::Guard(format!(
            "{what}: about {cells:.3e} top-degree simplices (limit {MAX_CELLS:.0e}); \
             pass --force to run anyway"
        )));
    }
    Ok(())
}

fn put_homology(report: &mut Report, format: Format, h: &HomologyResult) {
    match format {
        Format::Json => report.put("homology", h),
        Format::Text => report.put(
            "homology",
            h.groups
                .iter()
                .enumerate()
                .map(|(k, g)| format!("H_{k} = {g}"))
                .collect::<Vec<_>>(),
        ),
    }
}

fn groups_text(h: &[omega_nerve::simplicial::HomologyGroup]) -> String {
    let parts: Vec<String> = h.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

// ---- verify

fn verify(cli: &Cli, v: &Verify) -> CliResult<Report> {
    let mut report = Report::new(echo());
    match v {
        Verify::Appendix(a) => appendix(cli, a, &mut report)?,
        Verify::Contraction { m } => {
            bound(cli, "m", *m, MAX_M)?;
            report.push(homotopy_check(&contraction_h(*m), *m)?);
        }
        Verify::Square { m, degree } => {
            bound(cli, "m", *m, MAX_M)?;
            bound(cli, "degree", *degree, MAX_P)?;
            report.push(square_check(&verify_contraction_square(*m, *degree)));
        }
        Verify::Sdr(a) => sdr(cli, a, &mut report)?,
    }
    Ok(report)
}

fn appendix(cli: &Cli, a: &AppendixArgs, report: &mut Report) -> CliResult<()> {
    bound(cli, "m", a.m, MAX_M)?;
    bound(cli, "degree", a.degree, MAX_P)?;
    let mut h = contraction_h(a.m);
    if a.tamper_homotopy {
        h.set_image(
            BasisKey::simplex([0]),
            GradedChain::basis(1, BasisKey::simplex([0, 1])),
        );
    }
    let (homotopy, square) = rayon::join(
        || homotopy_check(&h, a.m),
        || verify_contraction_square(a.m, a.degree),
    );
    report.push(homotopy?);
    report.push(square_check(&square));
    Ok(())
}

fn homotopy_check(h: &ChainHomotopy, m: usize) -> CliResult<Check> {
    let name = format!("contraction homotopy on cn(Δ^{m})");
    Ok(match h.failure()? {
        None => Check::pass(name, "∂h + h∂ = id − cn(0)cn(r), h positive"),
        Some(f) => Check::fail(
            name,
            f.reason.clone(),
            json!({
                "element": f.element.key.to_string(),
                "degree": f.element.degree,
                "reason": f.reason,
            }),
        ),
    })
}

fn square_check(r: &SquareReport) -> Check {
    let name = format!("contraction square, m = {}, P = {}", r.m, r.max_degree);
    match &r.witness {
        None => Check::pass(name, format!("{} simplices of Δ^1 × Δ^m", r.checked)),
        Some(w) => Check::fail(
            name,
            format!("differs at φ = {:?}, ψ = {:?}", w.phi, w.psi),
            json!({
                "phi": w.phi,
                "psi": w.psi,
                "element": w.element.key.to_string(),
                "simplicial_side": w.simplicial_side.to_string(),
                "transformation_side": w.transformation_side.to_string(),
            }),
        ),
    }
}

fn sdr(cli: &Cli, a: &SdrArgs, report: &mut Report) -> CliResult<()> {
    bound(cli, "max-m", a.max_m, MAX_M)?;
    bound(cli, "degree", a.degree, MAX_D)?;
    bound(cli, "count", a.count, 10_000)?;
    let theta = [
        Monotone::new(vec![0, 1, 1], 2)?,
        Monotone::new(vec![0, 2], 2)?,
    ];
    let fixed = vertex_instance([2, 1, 2], [&theta[0], &theta[1]], a.degree)?;
    report.push(sdr_check("fixed instance m = [2, 1, 2]", &fixed)?);
    let instances = seeded_vertex_instances(cli.seed, a.count, a.max_m, a.degree)?;
    let failures: Vec<Value> = instances
        .iter()
        .enumerate()
        .filter_map(|(k, (m, th, t))| match sdr_failure(t) {
            Ok(None) => None,
            Ok(Some(reason)) => Some(Ok(json!({
                "instance": k,
                "m": m,
                "theta": [th[0].values(), th[1].values()],
                "reason": reason,
            }))),
            Err(e) => Some(Err(e)),
        })
        .collect::<CliResult<_>>()?;
    let name = format!("{} seeded instances (seed {})", a.count, cli.seed);
    report.push(match failures.first() {
        None => Check::pass(name, format!("m_k ≤ {}, degree {}", a.max_m, a.degree)),
        Some(w) => Check::fail(name, format!("{} failing", failures.len()), w.clone()),
    });
    Ok(())
}

fn sdr_failure(t: &SdrTriple) -> CliResult<Option<String>> {
    if check_sdr(t)? {
        return Ok(None);
    }
    Ok(Some(
        t.failure()?
            .unwrap_or_else(|| "retract check failed".to_string()),
    ))
}

fn sdr_check(name: &str, t: &SdrTriple) -> CliResult<Check> {
    Ok(match sdr_failure(t)? {
        None => Check::pass(name, "ri = id, hi_0 = ir, hi_1 = id, h fixes i"),
        Some(reason) => Check::fail(name, reason.clone(), Value::String(reason)),
    })
}

// ---- nerve

fn monoid_of(args: &NerveArgs) -> CliResult<MonoidSpec> {
    if let Some(path) = &args.monoid_file {
        let v = read_json(path)?;
        return Ok(MonoidSpec::from_json(&v)?);
    }
    if let Some(g) = &args.group {
        if !g.eq_ignore_ascii_case("z") {
            return Err(CliError::Usage(format!(
                "unsupported group {g}; only z has windows"
            )));
        }
    }
    match (&args.monoid, &args.window) {
        (Some(m), None) => Ok(MonoidSpec::parse(m)?),
        (None, Some(w)) => {
            let (lo, hi) = parse_window(w)?;
            Ok(MonoidSpec::window(lo, hi)?)
        }
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--window goes with --group, not --monoid".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "give --monoid, --monoid-file or --group z --window lo:hi".into(),
        )),
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not JSON: {e}", path.display())))
}

fn nerve(cli: &Cli, n: &Nerve) -> CliResult<Report> {
    let args = match n {
        Nerve::Kmn(a) | Nerve::Slice(a) | Nerve::Cylinder(a) => a,
        Nerve::Comma(c) => &c.nerve,
    };
    bound(cli, "degree", args.degree, MAX_D)?;
    let m = monoid_of(args)?;
    let (p, lvl) = (args.degree, args.level);
    let exponent = match n {
        Nerve::Kmn(_) => binom(p, lvl),
        Nerve::Slice(_) => binom(p + 1, lvl),
        Nerve::Cylinder(_) | Nerve::Comma(_) => binom(p + 1, lvl) + binom(p, lvl),
    };
    estimate(cli, m.len(), exponent, &format!("{} at degree {p}", m.name))?;

    let mut report = Report::new(echo());
    report.put("monoid", &m.name);
    report.put("level", lvl);
    let object: Arc<SimplicialTruncation> = match n {
        Nerve::Kmn(_) => kmn_nerve(&m, lvl, p)?.object,
        Nerve::Slice(_) => slice_nerve(&m, lvl, p)?.object,
        Nerve::Cylinder(_) => {
            let c = cylinder_nerve(&m, lvl, p)?;
            report.put("base_counts", c.base.object.counts());
            c.nerve.object
        }
        Nerve::Comma(c) => {
            let cyl = cylinder_nerve(&m, lvl, p)?;
            let u = comma_leg(&cyl.base, &c.left)?;
            let v = comma_leg(&cyl.base, &c.right)?;
            report.put("legs", format!("{} ↓ {}", c.left, c.right));
            comma_nerve(&u, &v, &cyl)?.object
        }
    };
    report.put("counts", object.counts());
    report.put("nondegenerate", object.nondegenerate_counts());
    if let Some(d) = args.homology {
        put_homology(&mut report, cli.format, &homology(&object, d)?);
    }
    if let Some(path) = &args.emit {
        let text = serde_json::to_string(&sset_to_json(&object)).expect("serializable");
        std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        report.put("emitted", path.display().to_string());
    }
    Ok(report)
}

fn comma_leg(base: &LabelingNerve, spec: &str) -> CliResult<SimplicialMap> {
    match spec {
        "point" => Ok(base_point(base)?),
        "id" => Ok(SimplicialMap::identity(base.object.clone())),
        s => {
            let values = s.strip_prefix("hom:").ok_or_else(|| {
                CliError::Usage(format!("comma leg {s}: expected point, id or hom:v0,v1,…"))
            })?;
            let h: Vec<i64> = values
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("comma leg {s}: {e}")))?;
            Ok(homomorphism_map(base, base, &h)?)
        }
    }
}

// ---- compare

fn compare(cli: &Cli, a: &CompareArgs) -> CliResult<Report> {
    bound(cli, "degree", a.degree, MAX_D)?;
    let m = MonoidSpec::parse(&a.monoid)?;
    if a.level == 0 {
        return Err(CliError::Usage("--level must be at least 1".into()));
    }
    estimate(cli, m.len(), binom(a.degree, a.level), &m.name)?;
    if a.hdeg + 1 > a.degree {
        return Err(CliError::Usage(format!(
            "--hdeg {} needs --degree at least {}",
            a.hdeg,
            a.hdeg + 1
        )));
    }
    let mut report = Report::new(echo());
    let kmn = kmn_nerve(&m, a.level, a.degree)?;
    report.put("monoid", &m.name);
    report.put("level", a.level);
    report.put("counts", kmn.object.counts());
    match a.comparison() {
        Comparison::KmnVsClassical => {
            if a.level != 1 {
                return Err(CliError::Usage(
                    "the classical nerve only compares at level 1".into(),
                ));
            }
            let c = FiniteCategorySpec::one_object(&m)?;
            let classical = Arc::new(classical_nerve(&c, a.degree));
            report.push(counts_check("classical nerve", &kmn.object, &classical));
            report.push(match kmn_to_classical(&kmn, &classical) {
                Ok(f) if f.is_isomorphism() => {
                    Check::pass("spine map", "simplicial bijection onto the classical nerve")
                }
                Ok(_) => Check::fail("spine map", "not bijective", json!("not bijective")),
                Err(e) => Check::fail("spine map", e.to_string(), json!(e.to_string())),
            });
            report.push(homology_check(&kmn.object, &classical, a.hdeg)?);
        }
        Comparison::KmnVsDoldkan => {
            let dk = dold_kan_em(&m, a.level, a.degree)?;
            report.push(counts_check("Dold–Kan model", &kmn.object, &dk));
            report.push(homology_check(&kmn.object, &dk, a.hdeg)?);
        }
        Comparison::KmnVsPoint => {
            let pt = Arc::new(point(a.degree));
            let f = SimplicialMap::from_fn(kmn.object.clone(), pt, |_, _| Ok(0))?;
            let r = thomason_proxy(&f, a.hdeg)?;
            let name = format!("map to a point on H_0..H_{}", a.hdeg);
            report.push(match r.induced.first_failure {
                None => Check::pass(name, "induced isomorphism"),
                Some(k) => Check::fail(
                    name,
                    format!("H_{k}: {} vs {}", r.induced.source[k], r.induced.target[k]),
                    json!({
                        "degree": k,
                        "source": r.induced.source[k].to_string(),
                        "target": r.induced.target[k].to_string(),
                    }),
                ),
            });
        }
    }
    Ok(report)
}

fn counts_check(what: &str, x: &SimplicialTruncation, y: &SimplicialTruncation) -> Check {
    let name = format!("counts vs {what}");
    let (a, b) = (x.counts(), y.counts());
    match (0..a.len().min(b.len())).find(|&p| a[p] != b[p]) {
        None if a.len() == b.len() => Check::pass(name, format!("{a:?}")),
        None => Check::fail(name, "truncations differ", json!({"left": a, "right": b})),
        Some(p) => Check::fail(
            name,
            format!("degree {p}: {} vs {}", a[p], b[p]),
            json!({"degree": p, "left": a[p], "right": b[p]}),
        ),
    }
}

fn homology_check(
    x: &SimplicialTruncation,
    y: &SimplicialTruncation,
    d: usize,
) -> CliResult<Check> {
    let (hx, hy) = rayon::join(|| homology(x, d), || homology(y, d));
    let (hx, hy) = (hx?.groups, hy?.groups);
    let name = format!("homology H_0..H_{d}");
    Ok(match (0..=d).find(|&k| hx[k] != hy[k]) {
        None => Check::pass(name, groups_text(&hx)),
        Some(k) => Check::fail(
            name,
            format!("H_{k}: {} vs {}", hx[k], hy[k]),
            json!({"degree": k, "left": hx[k].to_string(), "right": hy[k].to_string()}),
        ),
    })
}

// ---- homology, schema, oriental

fn homology_file(cli: &Cli, a: &HomologyArgs) -> CliResult<Report> {
    let x = sset_from_json(&read_json(&a.input)?)?;
    let top = x.truncation();
    let d = match a.degree {
        Some(d) => d,
        None if top == 0 => 0,
        None => top - 1,
    };
    let mut report = Report::new(echo());
    report.put("counts", x.counts());
    put_homology(&mut report, cli.format, &homology(&x, d)?);
    Ok(report)
}

fn schemas() -> Vec<(&'static str, Value)> {
    vec![
        (
            "adc/v1",
            json!({
                "max_degree": "integer",
                "basis": "per degree, a list of keys; a key is an integer array or a two-element array of keys (tensor pair)",
                "boundary": "key → list of [coefficient, key]",
                "augmentation": "key → integer (degree-0 elements)",
            }),
        ),
        (
            "sset/v1",
            json!({
                "schema": "\"sset/v1\"",
                "truncation": "integer d",
                "simplices": "per degree 0..d, a list of simplex names (integer arrays)",
                "faces": "degree p ≥ 1 → per simplex, the indices of its p + 1 faces",
                "degeneracies": "degree p < d → per simplex, the indices of its p + 1 degeneracies",
            }),
        ),
        (
            "smap/v1",
            json!({
                "schema": "\"smap/v1\"",
                "source": "sset/v1",
                "target": "sset/v1",
                "levels": "per degree, the index of the image of each simplex",
            }),
        ),
        (
            "monoid/v1",
            json!({
                "schema": "\"monoid/v1\"",
                "kind": "\"table\" or \"window\"",
                "name": "optional string",
                "table": {
                    "elements": "list of names",
                    "unit": "index",
                    "add": "square table of indices",
                    "order": "optional square boolean table, a ≤ b at [a][b]",
                },
                "window": {"lo": "integer", "hi": "integer", "ordered": "boolean"},
            }),
        ),
        (
            "report/v1",
            json!({
                "schema": "\"report/v1\"",
                "command": "the command line",
                "version": "tool version",
                "checks": "list of {name, passed, detail, witness?}",
                "data": "command-specific values (counts, homology, …)",
                "passed": "boolean",
                "timing_ms": "integer, the only nondeterministic field",
            }),
        ),
    ]
}

fn schema(name: Option<&str>) -> CliResult<String> {
    let all = schemas();
    match name {
        None => Ok(all.iter().map(|(n, _)| format!("{n}\n")).collect()),
        Some(n) => all
            .into_iter()
            .find(|(k, _)| *k == n)
            .map(|(_, v)| serde_json::to_string_pretty(&v).expect("serializable") + "\n")
            .ok_or_else(|| CliError::Usage(format!("unknown schema {n}"))),
    }
}

fn oriental_atoms(cli: &Cli, n: usize, emit: Format) -> CliResult<Outcome> {
    bound(cli, "n", n, MAX_M)?;
    let o = oriental(n);
    if emit == Format::Json {
        let text = serde_json::to_string_pretty(&o.to_json()).expect("serializable");
        return Ok(Outcome::Raw(text + "\n"));
    }
    let mut report = Report::new(echo());
    report.put("atom_counts", o.atom_counts());
    let lines: Vec<String> = o
        .atoms
        .iter()
        .filter(|(_, a)| a.top_degree() > 0)
        .map(|(key, a)| {
            let rows: Vec<String> = (0..a.top_degree())
                .map(|q| format!("{} → {}", a.source(q), a.target(q)))
                .collect();
            format!("{key}: {}", rows.join("; "))
        })
        .collect();
    report.put("atoms", lines);
    report.push(Check::from_bool(
        "unital and strongly loop-free",
        o.certificate.passed(),
        format!("O_{n}"),
    ));
    Ok(Outcome::Report(report))
}
