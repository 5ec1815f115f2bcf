//! Subcommand implementations. Each builds a JSON document and the CSV
//! tables for the same data.

use serde_json::{json, Value};

use lamiq::cell::{CellConfig, CellVertices, VoronoiCell};
use lamiq::exactnum::{QVector, Rational};
use lamiq::family::{analyze_family, detect_phase_boundaries, simplest_rational, FamilyConfig, FamilyReport, PolyNu, ScanConfig};
use lamiq::lattice::relevant_vectors;
use lamiq::moments::{monte_carlo_g, CellSummary};
use lamiq::symmetry::partition_orbits;
use lamiq::voronoi::EnumerationConfig;
use lamiq::Result;

use crate::config::{Cli, Command, Common, RunConfig, Source};
use crate::output::{approx, emit, num, radq, vector, Table};

fn words(v: &QVector) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn poly(p: &PolyNu) -> Value {
    json!({
        "display": p.to_string(),
        "coefficients": p.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn enumeration(c: &Common) -> EnumerationConfig {
    EnumerationConfig {
        seed: c.seed,
        saturation: c.saturation,
        orbit_cap: c.orbit_cap,
        ..EnumerationConfig::default()
    }
}

fn cell_config(c: &Common) -> CellConfig {
    CellConfig {
        enumeration: enumeration(c),
        orbit_cap: c.orbit_cap,
        precision: c.precision,
    }
}

fn family_config(c: &Common) -> FamilyConfig {
    let mut cfg = FamilyConfig::default();
    cfg.scan.enumeration = enumeration(c);
    cfg.fit.precision = c.precision;
    cfg.fit.orbit_cap = c.orbit_cap;
    cfg
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::RelevantVectors => "relevant-vectors",
        Command::Vertices => "vertices",
        Command::Faces => "faces",
        Command::Catalog => "catalog",
        Command::G => "g",
        Command::Phases => "phases",
        Command::Fit => "fit",
        Command::Optimize => "optimize",
        Command::McCheck { .. } => "mc-check",
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let c = &cli.common;
    let src = Source::load(c)?;
    let name = command_name(&cli.command);
    let uses_a = matches!(
        cli.command,
        Command::RelevantVectors | Command::Vertices | Command::Faces | Command::Catalog | Command::G | Command::McCheck { .. }
    );
    let a = if uses_a { Some(src.parameter(c)?) } else { None };
    let interval = if uses_a { None } else { Some(src.interval(c)?) };
    let cfg = RunConfig {
        artifact: "lamiq",
        version: env!("CARGO_PKG_VERSION"),
        command: name.into(),
        lattice: src.name.clone(),
        spec: src.spec.clone(),
        a: a.clone(),
        interval: interval.clone(),
        seed: c.seed,
        precision: c.precision,
        saturation: c.saturation,
        orbit_cap: c.orbit_cap,
        samples: match cli.command {
            Command::McCheck { samples } => Some(samples),
            _ => None,
        },
        format: c.format,
    };
    let (doc, tables) = match &cli.command {
        Command::RelevantVectors => relevant(&src, &a.expect("parameter"))?,
        Command::Vertices => vertices(&src, &a.expect("parameter"), c)?,
        Command::Faces => faces(&src, &a.expect("parameter"), c)?,
        Command::Catalog => catalog(&src, &a.expect("parameter"), c)?,
        Command::G => g(&src, &a.expect("parameter"), c)?,
        Command::Phases => phases(&src, &interval.expect("interval"), c)?,
        Command::Fit => fit(&family(&src, &interval.expect("interval"), c)?),
        Command::Optimize => optimize(&family(&src, &interval.expect("interval"), c)?),
        Command::McCheck { samples } => mc_check(&src, &a.expect("parameter"), *samples, c)?,
    };
    emit(&cfg, c.out.as_deref(), name, &doc, &tables)
}

type Output = (Value, Vec<Table>);

fn relevant(src: &Source, a: &Rational) -> Result<Output> {
    let basis = src.family.instantiate(a)?;
    src.group.validate_for(&basis)?;
    let rv = relevant_vectors(&basis);
    let vecs: Vec<QVector> = rv.vectors.iter().map(|v| v.vector.clone()).collect();
    let orbits = partition_orbits(&vecs, &src.group, usize::MAX)?;
    let mut t = Table::new("orbits", &["orbit", "size", "norm2", "norm2_decimal", "representative"]);
    let mut list = Vec::new();
    for (k, (r, members)) in orbits.iter().enumerate() {
        let n2 = r.norm2();
        t.push(vec![(k + 1).to_string(), members.len().to_string(), n2.to_string(), num(&n2)["decimal"].as_str().unwrap_or("").into(), words(r)]);
        list.push(json!({
            "orbit": k + 1,
            "size": members.len(),
            "norm2": num(&n2),
            "representative": vector(r),
            "members": members.iter().map(|&i| json!({
                "coeffs": rv.vectors[i].coeffs,
                "vector": vector(&rv.vectors[i].vector),
            })).collect::<Vec<_>>(),
        }));
    }
    Ok((json!({ "a": num(a), "count": rv.vectors.len(), "orbits": list }), vec![t]))
}

/// Orbit index of every facet.
fn facet_orbits(cv: &CellVertices, src: &Source) -> Result<(Vec<usize>, Vec<(QVector, usize)>)> {
    let normals: Vec<QVector> = cv.facets.iter().map(|f| f.normal.clone()).collect();
    let parts = partition_orbits(&normals, &src.group, usize::MAX)?;
    let mut of = vec![0; normals.len()];
    for (k, (_, members)) in parts.iter().enumerate() {
        for &j in members {
            of[j] = k;
        }
    }
    Ok((of, parts.into_iter().map(|(r, m)| (r, m.len())).collect()))
}

fn vertices(src: &Source, a: &Rational, c: &Common) -> Result<Output> {
    let cv = CellVertices::build(&src.family.instantiate(a)?, &src.group, &cell_config(c))?;
    let (of, parts) = facet_orbits(&cv, src)?;
    let mut t = Table::new("classes", &["class", "size", "incidence", "representative"]);
    let mut classes = Vec::new();
    for (k, o) in cv.vertices.orbits.iter().enumerate() {
        let mut inc = vec![0usize; parts.len()];
        for &j in &cv.vertices.active[o.rep as usize] {
            inc[of[j as usize]] += 1;
        }
        let x = &cv.vertices.coords[o.rep as usize];
        let inc_s = inc.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        t.push(vec![(k + 1).to_string(), o.size.to_string(), inc_s, words(x)]);
        classes.push(json!({ "class": k + 1, "size": o.size, "incidence": inc, "representative": vector(x) }));
    }
    let facet_types: Vec<Value> = parts
        .iter()
        .map(|(r, n)| json!({ "normal": vector(r), "size": n, "norm2": num(&r.norm2()) }))
        .collect();
    Ok((
        json!({
            "a": num(a),
            "vertices": cv.vertices.len(),
            "classes": classes,
            "facet_types": facet_types,
            "enumeration": cv.stats,
        }),
        vec![t],
    ))
}

fn class_tables(cell: &VoronoiCell) -> (Value, Vec<Table>) {
    let mut t = Table::new("classes", &["dim", "class", "total", "vertices", "orbits", "volume", "volume_decimal"]);
    let mut per_dim = Vec::new();
    for (d, list) in cell.classes.classes.iter().enumerate() {
        let mut row = Vec::new();
        for cls in list {
            let vol = cell.records[d][cls.orbits[0] as usize].volume().expect("normalizable volume");
            t.push(vec![
                d.to_string(),
                cls.name(),
                cls.total.to_string(),
                cls.vertex_count.to_string(),
                cls.orbits.len().to_string(),
                vol.to_string(),
                format!("{:.15e}", vol.to_f64()),
            ]);
            row.push(json!({
                "name": cls.name(),
                "total": cls.total,
                "vertices": cls.vertex_count,
                "orbits": cls.orbits.len(),
                "children": cls.children,
                "volume": radq(&vol),
            }));
        }
        per_dim.push(row);
    }
    let totals = cell.lattice.totals();
    let mut tt = Table::new("totals", &["dim", "classes", "total"]);
    for (d, (&n, k)) in totals.iter().zip(cell.classes.class_counts()).enumerate() {
        tt.push(vec![d.to_string(), k.to_string(), n.to_string()]);
    }
    let doc = json!({
        "totals": totals,
        "totals_row": totals.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
        "class_counts": cell.classes.class_counts(),
        "orbit_counts": cell.lattice.orbit_counts(),
        "euler_sum": cell.lattice.euler_sum(),
        "classes": per_dim,
    });
    (doc, vec![tt, t])
}

fn faces(src: &Source, a: &Rational, c: &Common) -> Result<Output> {
    let cell = VoronoiCell::build(&src.family.instantiate(a)?, &src.group, &cell_config(c))?;
    let (mut doc, tables) = class_tables(&cell);
    doc["a"] = num(a);
    Ok((doc, tables))
}

fn summary_doc(s: &CellSummary) -> Value {
    json!({
        "dimension": s.dim,
        "volume": num(&s.volume),
        "second_moment": num(&s.second_moment),
        "alpha": s.alpha.as_ref().map(num),
        "beta": s.beta.as_ref().map(num),
        "tensor": (0..s.dim).map(|i| (0..s.dim).map(|j| s.tensor[(i, j)].to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "g": match &s.g_exact { Some(g) => num(g), None => approx(&s.g) },
        "g_exact": s.g_exact.is_some(),
    })
}

fn summary_table(s: &CellSummary) -> Table {
    let mut t = Table::new("summary", &["quantity", "exact", "decimal", "error"]);
    let mut row = |name: &str, v: Value| {
        let get = |k: &str| v[k].as_str().map(str::to_string).unwrap_or_default();
        let exact = match v.get("exact") {
            Some(Value::String(s)) => s.clone(),
            _ => v["enclosure"].as_array().map(|e| format!("[{}, {}]", e[0].as_str().unwrap_or(""), e[1].as_str().unwrap_or(""))).unwrap_or_default(),
        };
        t.push(vec![name.into(), exact, get("decimal"), get("error")]);
    };
    row("volume", num(&s.volume));
    row("U", num(&s.second_moment));
    if let (Some(al), Some(be)) = (&s.alpha, &s.beta) {
        row("alpha", num(al));
        row("beta", num(be));
    }
    row("G", match &s.g_exact {
        Some(g) => num(g),
        None => approx(&s.g),
    });
    t
}

fn g(src: &Source, a: &Rational, c: &Common) -> Result<Output> {
    let cell = VoronoiCell::build(&src.family.instantiate(a)?, &src.group, &cell_config(c))?;
    let mut doc = summary_doc(&cell.summary);
    doc["a"] = num(a);
    Ok((doc, vec![summary_table(&cell.summary)]))
}

fn catalog(src: &Source, a: &Rational, c: &Common) -> Result<Output> {
    let cell = VoronoiCell::build(&src.family.instantiate(a)?, &src.group, &cell_config(c))?;
    let (classes, mut tables) = class_tables(&cell);
    let mut ot = Table::new("orbits", &["dim", "orbit", "class", "size", "vertices", "volume", "barycenter"]);
    let mut levels = Vec::new();
    for (d, level) in cell.lattice.levels.iter().enumerate() {
        let mut row = Vec::new();
        for (i, o) in level.iter().enumerate() {
            let rec = &cell.records[d][i];
            let cls = &cell.classes.classes[d][cell.classes.class_of[d][i]];
            let vol = rec.volume()?;
            ot.push(vec![d.to_string(), i.to_string(), cls.name(), o.size.to_string(), o.vertices.len().to_string(), vol.to_string(), words(&rec.barycenter)]);
            row.push(json!({
                "orbit": i,
                "class": cls.name(),
                "size": o.size,
                "vertices": o.vertices,
                "children": o.children.iter().map(|l| json!({ "orbit": l.orbit, "transform": l.transform })).collect::<Vec<_>>(),
                "volume": radq(&vol),
                "centroid": vector(&rec.centroid),
                "barycenter": vector(&rec.barycenter),
                "moment_coeff": rec.moment_coeff,
                "radicand": rec.radicand.to_string(),
            }));
        }
        levels.push(row);
    }
    tables.push(ot);
    let doc = json!({
        "a": num(a),
        "vertices": cell.base.vertices.coords.iter().map(vector).collect::<Vec<_>>(),
        "classes": classes,
        "levels": levels,
        "summary": summary_doc(&cell.summary),
    });
    Ok((doc, tables))
}

fn phases(src: &Source, (lo, hi): &(Rational, Rational), c: &Common) -> Result<Output> {
    let cfg = ScanConfig {
        enumeration: enumeration(c),
        ..ScanConfig::default()
    };
    let (scan, skeletons) = detect_phase_boundaries(&src.family, &src.group, lo, hi, &cfg)?;
    let mut t = Table::new("phases", &["phase", "a_from", "a_to", "vertices", "vertex_classes", "relevant", "facet_types"]);
    let mut list = Vec::new();
    for (k, (span, sk)) in scan.phases.iter().zip(&skeletons).enumerate() {
        let basis = src.family.instantiate(&sk.reference)?;
        let normals: Vec<QVector> = sk.facet_coeffs.iter().map(|u| basis.point(u)).collect();
        let facet_types = partition_orbits(&normals, &src.group, usize::MAX)?.len();
        let sig = &span.signature;
        t.push(vec![
            (k + 1).to_string(),
            span.a_lo.to_string(),
            span.a_hi.to_string(),
            sig.vertices.to_string(),
            sig.vertex_classes.to_string(),
            sig.relevant.to_string(),
            facet_types.to_string(),
        ]);
        list.push(json!({
            "phase": k + 1,
            "a_checked": [num(&span.a_lo), num(&span.a_hi)],
            "vertices": sig.vertices,
            "vertex_classes": sig.vertex_classes,
            "relevant": sig.relevant,
            "facet_types": facet_types,
        }));
    }
    let mut bt = Table::new("boundaries", &["boundary", "nu_lo", "nu_hi", "simplest"]);
    let mut brackets = Vec::new();
    for (k, b) in scan.boundaries.iter().enumerate() {
        let s = simplest_rational(&b.nu_lo, &b.nu_hi);
        bt.push(vec![(k + 1).to_string(), b.nu_lo.to_string(), b.nu_hi.to_string(), s.to_string()]);
        brackets.push(json!({
            "nu": [num(&b.nu_lo), num(&b.nu_hi)],
            "a": [num(&b.a_lo), num(&b.a_hi)],
            "simplest_nu": s.to_string(),
        }));
    }
    let doc = json!({
        "nu_interval": [num(lo), num(hi)],
        "phases": list,
        "boundaries": brackets,
        "exhausted": scan.exhausted,
    });
    Ok((doc, vec![t, bt]))
}

fn family(src: &Source, (lo, hi): &(Rational, Rational), c: &Common) -> Result<FamilyReport> {
    analyze_family(&src.family, &src.group, lo, hi, &[], &family_config(c))
}

fn fit(r: &FamilyReport) -> Output {
    let mut t = Table::new("coefficients", &["phase", "moment", "power_of_nu", "coefficient"]);
    let mut list = Vec::new();
    for (k, f) in r.fits.iter().enumerate() {
        for (name, p) in [("a3U", Some(&f.u)), ("a3alpha", f.alpha.as_ref()), ("a3beta", f.beta.as_ref())] {
            if let Some(p) = p {
                for (e, c) in p.coeffs.iter().enumerate() {
                    t.push(vec![(k + 1).to_string(), name.into(), e.to_string(), c.to_string()]);
                }
            }
        }
        list.push(json!({
            "phase": k + 1,
            "a_range": [num(&f.a_lo), num(&f.a_hi)],
            "reference": f.reference.to_string(),
            "fit_samples": f.fit_samples.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "held_out_samples": f.held_out_samples.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "volume_slope": num(&f.volume_slope),
            "a3U": poly(&f.u),
            "a3alpha": f.alpha.as_ref().map(poly),
            "a3beta": f.beta.as_ref().map(poly),
        }));
    }
    let diffs: Vec<Value> = r
        .differences
        .iter()
        .map(|d| json!({ "name": d.name, "boundary_nu": d.boundary.to_string(), "difference": poly(&d.difference), "order_at_boundary": d.multiplicity }))
        .collect();
    (json!({ "phases": list, "differences": diffs }), vec![t])
}

fn optimize(r: &FamilyReport) -> Output {
    let mut t = Table::new("extrema", &["phase", "nu_lo", "nu_hi", "a", "G", "isotropy"]);
    let iso = |v: Option<bool>| match v {
        Some(true) => "exact-pass",
        Some(false) => "fail",
        None => "n/a",
    };
    let mut phases = Vec::new();
    for p in &r.optimum.phases {
        for e in &p.candidates {
            t.push(vec![
                (p.phase + 1).to_string(),
                e.root.lo.to_string(),
                e.root.hi.to_string(),
                e.a.to_decimal(12),
                e.g.to_decimal(12),
                iso(p.isotropy_exact).into(),
            ]);
        }
        phases.push(json!({
            "phase": p.phase + 1,
            "extremum_polynomial": poly(&p.extremum_polynomial),
            "roots": p.roots.iter().map(|r| [r.lo.to_string(), r.hi.to_string()]).collect::<Vec<_>>(),
            "candidates": p.candidates.iter().map(|e| json!({
                "nu": [e.root.lo.to_string(), e.root.hi.to_string()],
                "a": approx(&e.a),
                "g": approx(&e.g),
            })).collect::<Vec<_>>(),
            "isotropy": iso(p.isotropy_exact),
        }));
    }
    let best = r.optimum.best.as_ref().map(|b| {
        json!({
            "phase": b.phase + 1,
            "nu": [b.root.lo.to_string(), b.root.hi.to_string()],
            "a_star": approx(&b.a),
            "g_star": approx(&b.g),
            "isotropy": iso(r.optimum.phases[b.phase].isotropy_exact),
        })
    });
    (json!({ "phases": phases, "optimum": best }), vec![t])
}

fn mc_check(src: &Source, a: &Rational, samples: usize, c: &Common) -> Result<Output> {
    let basis = src.family.instantiate(a)?;
    let cell = VoronoiCell::build(&basis, &src.group, &cell_config(c))?;
    let est = monte_carlo_g(&basis, samples, c.seed);
    let exact = cell.summary.g.to_f64();
    let z = if est.stderr > 0.0 { (est.g - exact) / est.stderr } else { 0.0 };
    let mut t = Table::new("mc", &["samples", "estimate", "stderr", "exact", "z"]);
    t.push(vec![samples.to_string(), format!("{:.12e}", est.g), format!("{:.3e}", est.stderr), format!("{exact:.12e}"), format!("{z:.3}")]);
    let doc = json!({
        "a": num(a),
        "samples": samples,
        "estimate": format!("{:.12e}", est.g),
        "stderr": format!("{:.3e}", est.stderr),
        "exact": match &cell.summary.g_exact { Some(g) => num(g), None => approx(&cell.summary.g) },
        "z": format!("{z:.3}"),
        "within_5_sigma": z.abs() < 5.0,
    });
    Ok((doc, vec![t]))
}
