use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use zmclab::approx::{profile_of, solve_ak_recursion, ApproxProfile, YGrid};
use zmclab::ck::{ck_series, ck_series_lightlike, trace_null_curve, InitialCurve};
use zmclab::curves::{
    bjorling_grid, make_director, ruled_surface_eval, Branch, CurveFn, NullCurve, SpacelikeCurve,
};
use zmclab::curves::null::SampleFlag;
use zmclab::export::{
    grid_vertices, sample_rows, write_ak_csv, write_bjorling_csv, write_bjorling_obj, write_grid_flags_csv,
    write_grid_rows_csv, write_obj,
};
use zmclab::gallery::{gallery_entry, gallery_list, regression_all, regression_check, EntryKind, GalleryEntry, RegressionOptions, RegressionReport};
use zmclab::geometry::{extract_admissibility_witness, lightlike_degeneracy, verify_admissible, Degeneracy, GraphSurface};
use zmclab::series::{PowerSeries1, PowerSeries2};
use zmclab::trace::TraceOptions;

use crate::config::RunConfig;
use crate::Failure;

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let p = dir.join(name);
    File::create(&p).map(BufWriter::new).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
}

fn write_with(
    dir: &Path,
    name: &str,
    f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), Failure> {
    let mut w = create(dir, name)?;
    f(&mut w).and_then(|_| w.flush()).map_err(|e| Failure::Io(format!("{name}: {e}")))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    write_with(dir, name, |w| writeln!(w, "{text}"))
}

fn print_json<T: Serialize>(rc: &RunConfig, value: &T) -> Result<(), Failure> {
    if rc.json {
        let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
        println!("{text}");
    }
    Ok(())
}

fn entry_named(name: &str) -> Result<GalleryEntry, Failure> {
    gallery_entry(name).ok_or_else(|| Failure::Config(format!("unknown gallery entry {name:?}")))
}

/// A germ built from the config: `(surface, series, φ, source)`.
struct Germ {
    surface: GraphSurface,
    series: PowerSeries2,
    phi: PowerSeries2,
    gamma: Option<InitialCurve>,
    source: String,
}

fn germ_from_config(rc: &RunConfig) -> Result<Germ, Failure> {
    let fc = &rc.file;
    let n = rc.order;
    if let Some(name) = &fc.gallery {
        let e = entry_named(name)?;
        let surface = e.surface(n)?;
        let series = surface.taylor(n)?;
        let gamma = e.gamma.as_ref().map(|_| e.initial_curve(n)).transpose()?;
        return Ok(Germ { surface, series, phi: PowerSeries2::zeros(0), gamma, source: format!("gallery:{name}") });
    }
    if let Some(seed) = fc.seed()? {
        let series = ck_series_lightlike(&seed, n)?;
        let gamma = Some(seed.initial_curve()?);
        return Ok(Germ {
            surface: GraphSurface::from_series(series.clone()),
            series,
            phi: PowerSeries2::zeros(0),
            gamma,
            source: "psi".into(),
        });
    }
    let gamma = fc.initial_curve()?.ok_or_else(|| Failure::Config("config needs u and v, psi, or gallery".into()))?;
    let phi = fc.phi();
    let series = ck_series(&gamma, &phi, n)?;
    Ok(Germ { surface: GraphSurface::from_series(series.clone()), series, phi, gamma: Some(gamma), source: "initial_curve".into() })
}

#[derive(Serialize)]
struct ConstructSummary {
    source: String,
    order: usize,
    residual: f64,
    tol: f64,
    passed: bool,
    nx: usize,
    ny: usize,
    spacelike: usize,
    timelike: usize,
    lightlike: usize,
}

fn count_tags(rows: &[zmclab::export::GridRow]) -> [usize; 3] {
    use zmclab::geometry::CausalType::*;
    let mut c = [0; 3];
    for (_, _, s) in rows {
        match s.map(|s| s.tag) {
            Some(Spacelike) => c[0] += 1,
            Some(Timelike) => c[1] += 1,
            Some(Lightlike) => c[2] += 1,
            None => {}
        }
    }
    c
}

fn write_grid(rc: &RunConfig, surface: &GraphSurface, prefix: &str) -> Result<Vec<zmclab::export::GridRow>, Failure> {
    let rows = sample_rows(surface, &rc.sample_box);
    write_with(&rc.out, &format!("{prefix}grid.csv"), |w| write_grid_rows_csv(w, &rows))?;
    Ok(rows)
}

fn write_mesh(rc: &RunConfig, rows: &[zmclab::export::GridRow], prefix: &str) -> Result<(), Failure> {
    let b = &rc.sample_box;
    let v = grid_vertices(rows);
    write_with(&rc.out, &format!("{prefix}surface.obj"), |w| write_obj(w, b.nx, b.ny, &v))?;
    write_with(&rc.out, &format!("{prefix}surface.flags.csv"), |w| write_grid_flags_csv(w, rows))
}

pub fn construct(rc: &RunConfig) -> Result<(), Failure> {
    let g = germ_from_config(rc)?;
    let report = verify_admissible(&g.series, &g.phi, rc.tol);
    write_json(&rc.out, "series.json", &g.series)?;
    let rows = write_grid(rc, &g.surface, "")?;
    let [spacelike, timelike, lightlike] = count_tags(&rows);
    let summary = ConstructSummary {
        source: g.source,
        order: rc.order,
        residual: report.max_residual,
        tol: rc.tol,
        passed: report.passed,
        nx: rc.sample_box.nx,
        ny: rc.sample_box.ny,
        spacelike,
        timelike,
        lightlike,
    };
    write_json(&rc.out, "summary.json", &summary)?;
    print_json(rc, &summary)?;
    eprintln!("construct: residual {:e} (tol {:e}), {spacelike} space-like, {timelike} time-like, {lightlike} light-like samples", summary.residual, rc.tol);
    if summary.passed {
        Ok(())
    } else {
        Err(Failure::Check(format!("residual {:e} exceeds tol {:e}", summary.residual, rc.tol)))
    }
}

#[derive(Serialize)]
struct TraceSummary {
    points: usize,
    max_null_residual: f64,
    cross_at_origin: f64,
    b_sides: [f64; 2],
    changes_type: bool,
}

#[derive(Serialize)]
struct ClassifyReport {
    degeneracy: Degeneracy,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(rename = "Delta", skip_serializing_if = "Option::is_none")]
    big_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    null_trace: Option<TraceSummary>,
}

pub fn classify(rc: &RunConfig) -> Result<(), Failure> {
    let g = germ_from_config(rc)?;
    let degeneracy = lightlike_degeneracy(&g.surface)?;
    let report = match degeneracy {
        Degeneracy::Degenerate => {
            let gamma = g.gamma.ok_or_else(|| Failure::Config("classify needs an initial curve".into()))?;
            let p = profile_of(&gamma)?;
            let pred = zmclab::approx::predict_causal_type(&p);
            ClassifyReport {
                degeneracy,
                mu: Some(p.mu),
                delta: Some(p.delta),
                big_delta: Some(p.big_delta),
                family: Some(p.family.as_str().into()),
                c: Some(p.c),
                c1: Some(p.c1),
                c2: Some(p.c2),
                prediction: Some(pred.as_str().into()),
                null_trace: None,
            }
        }
        Degeneracy::Nondegenerate => {
            let tr = trace_null_curve(&g.surface, &TraceOptions::default())?;
            ClassifyReport {
                degeneracy,
                mu: None,
                delta: None,
                big_delta: None,
                family: None,
                c: None,
                c1: None,
                c2: None,
                prediction: Some(if tr.changes_sign() { "changes_type" } else { "indeterminate" }.into()),
                null_trace: Some(TraceSummary {
                    points: tr.points.len(),
                    max_null_residual: tr.max_null_residual,
                    cross_at_origin: tr.cross_at_origin,
                    b_sides: tr.b_sides,
                    changes_type: tr.changes_sign(),
                }),
            }
        }
    };
    write_json(&rc.out, "classify.json", &report)?;
    print_json(rc, &report)?;
    eprintln!("classify: {:?}, prediction {}", report.degeneracy, report.prediction.as_deref().unwrap_or("-"));
    Ok(())
}

#[derive(Serialize)]
struct ApproxReport {
    profile: ApproxProfile,
    prediction: String,
    kmax: usize,
    tables: Vec<String>,
}

pub fn approx(rc: &RunConfig, kmax: usize) -> Result<(), Failure> {
    if kmax < 4 {
        return Err(Failure::Config(format!("--k must be at least 4, got {kmax}")));
    }
    if rc.file.phi.as_ref().is_some_and(|t| t.iter().any(|&(_, _, c)| c != 0.0)) {
        return Err(Failure::Config("approx needs phi = 0".into()));
    }
    let mut rc2 = rc.clone();
    rc2.order = rc.order.max(kmax + 2);
    let g = germ_from_config(&rc2)?;
    let gamma = g.gamma.ok_or_else(|| Failure::Config("approx needs an initial curve".into()))?;
    let p = profile_of(&gamma)?;
    let (alpha, beta) = (p.alpha(), p.beta());
    let initial: Vec<(f64, f64)> =
        (4..=kmax).map(|k| (k as f64 * g.series.get(k, 0), k as f64 * g.series.get(k, 1))).collect();
    let b = &rc.sample_box;
    let grid = YGrid { y0: b.y0, y1: b.y1, step: 1e-3 };
    let aj = |y: f64| alpha.jet(y);
    let bj = |y: f64| beta.jet(y);
    let tables = solve_ak_recursion(&aj, &bj, &initial, kmax, &grid)?;

    let mut names = Vec::new();
    for t in &tables {
        let name = format!("a_{}.csv", t.k);
        write_with(&rc.out, &name, |w| write_ak_csv(w, t))?;
        names.push(name);
    }
    write_with(&rc.out, "approx.csv", |w| {
        write!(w, "y")?;
        for t in &tables {
            write!(w, ",a_{}", t.k)?;
        }
        writeln!(w)?;
        for i in 0..tables[0].y.len() {
            write!(w, "{:?}", tables[0].y[i])?;
            for t in &tables {
                write!(w, ",{:?}", t.value[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    })?;
    names.push("approx.csv".into());
    let report = ApproxReport {
        prediction: zmclab::approx::predict_causal_type(&p).as_str().into(),
        profile: p,
        kmax,
        tables: names,
    };
    write_json(&rc.out, "approx.json", &report)?;
    print_json(rc, &report)?;
    eprintln!("approx: family {}, {} tables", report.profile.family, report.tables.len());
    Ok(())
}

fn null_curve_from_config(rc: &RunConfig) -> Result<NullCurve, Failure> {
    let fc = &rc.file;
    if let Some(sigma) = &fc.sigma {
        let n = sigma.iter().map(|c| c.len()).max().unwrap_or(1).max(1) - 1;
        let comps = [0, 1, 2].map(|i| PowerSeries1::from_coeffs(&sigma[i], n));
        return Ok(NullCurve::from_series("sigma", 0.0, comps, (-1.0, 1.0)));
    }
    match fc.curve.as_deref() {
        None | Some("helicoid_null") | Some("helicoid") => Ok(NullCurve::helicoid(zmclab::gallery::NULL_CURVE_ORDER)),
        Some(other) => Err(Failure::Config(format!("unknown null curve {other:?}"))),
    }
}

#[derive(Serialize)]
struct BjorlingSummary {
    curve: String,
    nu: usize,
    nv: usize,
    max_null_residual: f64,
    min_nondegeneracy: f64,
    ok: usize,
    not_immersed: usize,
    radius_exceeded: usize,
    imaginary_residue: usize,
}

pub fn bjorling(rc: &RunConfig) -> Result<(), Failure> {
    let sigma = null_curve_from_config(rc)?;
    let (us, vs) = rc.axes();
    let patch = bjorling_grid(&sigma, &us, &vs);
    write_with(&rc.out, "bjorling.obj", |w| write_bjorling_obj(w, &patch))?;
    write_with(&rc.out, "bjorling.csv", |w| write_bjorling_csv(w, &patch))?;
    let (null, cross) = sigma.check(101)?;
    let summary = BjorlingSummary {
        curve: sigma.name.clone(),
        nu: patch.nu,
        nv: patch.nv,
        max_null_residual: null,
        min_nondegeneracy: cross,
        ok: patch.count_flag(SampleFlag::Ok),
        not_immersed: patch.count_flag(SampleFlag::NotImmersed),
        radius_exceeded: patch.count_flag(SampleFlag::RadiusExceeded),
        imaginary_residue: patch.count_flag(SampleFlag::ImaginaryResidue),
    };
    write_json(&rc.out, "bjorling.json", &summary)?;
    print_json(rc, &summary)?;
    eprintln!("bjorling: {} samples, {} flagged", patch.samples.len(), patch.samples.len() - summary.ok);
    Ok(())
}

fn parse_ellipse(s: &str) -> Option<f64> {
    let rest = s.strip_prefix("ellipse")?.trim();
    if rest.is_empty() {
        return Some(zmclab::gallery::ELLIPSE_A);
    }
    rest.strip_prefix("a=")?.trim().parse().ok()
}

#[derive(Serialize)]
struct RuledSummary {
    curve: String,
    branch: String,
    eps: f64,
    nt: usize,
    ns: usize,
    max_abs_metric_det: f64,
    out_of_range: usize,
}

pub fn ruled(rc: &RunConfig) -> Result<(), Failure> {
    let fc = &rc.file;
    let branch = match fc.branch.as_deref() {
        None | Some("plus") => Branch::Plus,
        Some("minus") => Branch::Minus,
        Some(b) => return Err(Failure::Config(format!("branch must be plus or minus, got {b:?}"))),
    };
    let b = &rc.sample_box;
    let (base, name) = if let Some(psi) = &fc.psi {
        let n = psi.len().max(1) - 1;
        let c = CurveFn::Series(PowerSeries1::from_coeffs(psi, n));
        (SpacelikeCurve::graph(c, (b.x0, b.x1)), "psi".to_string())
    } else {
        let spec = fc.curve.as_deref().unwrap_or("ellipse a=2");
        let a = parse_ellipse(spec).ok_or_else(|| Failure::Config(format!("unknown base curve {spec:?}")))?;
        if !(a > 0.0) {
            return Err(Failure::Config(format!("ellipse needs a > 0, got {a}")));
        }
        (SpacelikeCurve::ellipse(a), format!("ellipse a={a}"))
    };
    let (t0, t1) = base.interval;
    let r = make_director(base, branch)?;
    let ts: Vec<f64> = (0..b.nx).map(|i| t0 + (t1 - t0) * i as f64 / (b.nx - 1) as f64).collect();
    let ss: Vec<f64> = (0..b.ny).map(|j| b.y0 + (b.y1 - b.y0) * j as f64 / (b.ny - 1) as f64).collect();

    let mut verts = Vec::with_capacity(ts.len() * ss.len());
    let mut rows = Vec::with_capacity(ts.len() * ss.len());
    let (mut det_max, mut skipped) = (0.0f64, 0usize);
    for &s in &ss {
        for &t in &ts {
            match ruled_surface_eval(&r, t, s) {
                Ok(p) => {
                    let det = r.metric_det(t, s)?;
                    let (ft, fs) = r.tangents(t, s)?;
                    let flag = if zmclab::curves::cross_norm(&ft, &fs) < 1e-8 { "not_immersed" } else { "ok" };
                    det_max = det_max.max(det.abs());
                    verts.push(p);
                    rows.push((t, s, det, flag));
                }
                Err(_) => {
                    skipped += 1;
                    verts.push([f64::NAN; 3]);
                    rows.push((t, s, f64::NAN, "out_of_range"));
                }
            }
        }
    }
    write_with(&rc.out, "ruled.obj", |w| write_obj(w, ts.len(), ss.len(), &verts))?;
    write_with(&rc.out, "ruled.csv", |w| {
        writeln!(w, "vertex,t,s,metric_det,tag,flag")?;
        for (i, (t, s, det, flag)) in rows.iter().enumerate() {
            writeln!(w, "{},{t:?},{s:?},{det:?},lightlike,{flag}", i + 1)?;
        }
        Ok(())
    })?;
    let summary = RuledSummary {
        curve: name,
        branch: format!("{branch:?}").to_lowercase(),
        eps: r.eps,
        nt: ts.len(),
        ns: ss.len(),
        max_abs_metric_det: det_max,
        out_of_range: skipped,
    };
    write_json(&rc.out, "ruled.json", &summary)?;
    print_json(rc, &summary)?;
    eprintln!("ruled: eps {}, max |det| {:e}, {} samples outside the patch", r.eps, det_max, skipped);
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    source: String,
    residual: f64,
    tol: f64,
    passed: bool,
    witness: Option<PowerSeries2>,
    witness_error: Option<String>,
}

fn finish_reports(rc: &RunConfig, reports: &[RegressionReport]) -> Result<(), Failure> {
    write_json(&rc.out, "verify.json", &reports)?;
    print_json(rc, &reports)?;
    for r in reports {
        eprintln!("{}: {}", r.name, if r.passed { "pass" } else { "FAIL" });
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn regression_options(rc: &RunConfig) -> RegressionOptions {
    RegressionOptions { grid: rc.sample_box, ..RegressionOptions::default() }
}

pub fn verify(rc: &RunConfig) -> Result<(), Failure> {
    let fc = &rc.file;
    if fc.u.is_none() && fc.v.is_none() && fc.psi.is_none() {
        let reports = match &fc.gallery {
            Some(name) => vec![regression_check(&entry_named(name)?, &regression_options(rc))],
            None => regression_all(&regression_options(rc)),
        };
        return finish_reports(rc, &reports);
    }
    let g = germ_from_config(rc)?;
    let r = verify_admissible(&g.series, &g.phi, rc.tol);
    let (witness, witness_error) = match extract_admissibility_witness(&g.series, rc.tol) {
        Ok(w) => (Some(w), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = VerifyReport { source: g.source, residual: r.max_residual, tol: rc.tol, passed: r.passed, witness, witness_error };
    write_json(&rc.out, "verify.json", &report)?;
    print_json(rc, &report)?;
    eprintln!("verify: residual {:e}, {}", report.residual, if report.passed { "pass" } else { "FAIL" });
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check(format!("residual {:e} exceeds tol {:e}", report.residual, rc.tol)))
    }
}

#[derive(Serialize)]
struct EntryInfo {
    name: &'static str,
    kind: EntryKind,
    printed_formula: &'static str,
    printed_offset: f64,
    printed_gamma: &'static str,
    printed_class: Option<&'static str>,
    family: Option<String>,
    lightlike: bool,
    notes: &'static [&'static str],
}

fn info(e: &GalleryEntry) -> EntryInfo {
    EntryInfo {
        name: e.name,
        kind: e.kind,
        printed_formula: e.printed_formula,
        printed_offset: e.printed_offset,
        printed_gamma: e.printed_gamma,
        printed_class: e.printed_class,
        family: e.family.map(|f| f.as_str().to_string()),
        lightlike: e.lightlike,
        notes: e.notes,
    }
}

pub fn gallery(rc: &RunConfig, name: Option<&str>) -> Result<(), Failure> {
    let Some(name) = name.or(rc.file.gallery.as_deref()) else {
        let list: Vec<EntryInfo> = gallery_list().iter().map(info).collect();
        write_json(&rc.out, "gallery.json", &list)?;
        print_json(rc, &list)?;
        for e in &list {
            eprintln!("{:<18} {}", e.name, e.printed_formula);
        }
        return Ok(());
    };
    let e = entry_named(name)?;
    let dir = rc.out.join(e.name);
    let mut rc = rc.clone();
    rc.out = dir;
    let surface = e.surface(rc.order)?;
    if e.kind != EntryKind::Ruled {
        write_json(&rc.out, "series.json", &surface.taylor(rc.order)?)?;
    }
    let rows = write_grid(&rc, &surface, "")?;
    write_mesh(&rc, &rows, "")?;
    if let Some(sigma) = e.null_curve() {
        let (us, vs) = rc.axes();
        let patch = bjorling_grid(&sigma, &us, &vs);
        write_with(&rc.out, "bjorling.obj", |w| write_bjorling_obj(w, &patch))?;
        write_with(&rc.out, "bjorling.csv", |w| write_bjorling_csv(w, &patch))?;
    }
    let report = regression_check(&e, &regression_options(&rc));
    write_json(&rc.out, "entry.json", &info(&e))?;
    write_json(&rc.out, "report.json", &report)?;
    print_json(&rc, &report)?;
    eprintln!("{}: {}", e.name, if report.passed { "pass" } else { "FAIL" });
    Ok(())
}

pub fn export(rc: &RunConfig, series: Option<&Path>) -> Result<(), Failure> {
    let surface = match series {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
            let s: PowerSeries2 = serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
            GraphSurface::from_series(s)
        }
        None => germ_from_config(rc)?.surface,
    };
    let rows = write_grid(rc, &surface, "")?;
    write_mesh(rc, &rows, "")?;
    let [spacelike, timelike, lightlike] = count_tags(&rows);
    let summary = serde_json::json!({
        "nx": rc.sample_box.nx,
        "ny": rc.sample_box.ny,
        "spacelike": spacelike,
        "timelike": timelike,
        "lightlike": lightlike,
    });
    print_json(rc, &summary)?;
    eprintln!("export: wrote grid.csv, surface.obj, surface.flags.csv to {}", rc.out.display());
    Ok(())
}
