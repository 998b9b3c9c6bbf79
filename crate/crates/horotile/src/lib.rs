//! File IO and the batch driver for `horotile-core`.

use horotile_core::certify::{krawczyk_certify, CertifiedShapes};
use horotile_core::cusp_areas;
use horotile_core::developing::{cross_sections_with_areas, develop_polyhedron, DevelopedPolyhedron};
use horotile_core::distances::{self, DistanceConfig, DistanceStatus};
use horotile_core::format::{parse_manifold_file, serialize_manifold_file, ManifoldFile};
use horotile_core::geometry::HPoint;
use horotile_core::interval::ExtendedBound;
use horotile_core::tiling::{GeometricObject, TileStream};
use horotile_core::trace::{trace, TraceConfig};
use horotile_core::{Error, Interval, MMatrix, MVector};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;

pub mod cli;

/// Failure of a driver run, with the process exit status it maps to.
#[derive(Debug)]
pub enum RunError {
    Io(std::io::Error),
    Core(Error),
    /// An operation still lacked precision at the cap.
    PrecisionExhausted { bits: usize, source: Error },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) => 1,
            RunError::PrecisionExhausted { .. } => 4,
            RunError::Core(e) => match e {
                Error::Parse(_) | Error::InvalidTriangulation(_) => 2,
                Error::CertificationFailed(_) => 3,
                Error::InsufficientPrecision(_) => 4,
                Error::Unsupported(_) => 5,
                Error::Domain(_) | Error::BudgetExceeded(_) => 1,
            },
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Io(e) => write!(f, "{e}"),
            RunError::Core(e) => write!(f, "{e}"),
            RunError::PrecisionExhausted { bits, source } => write!(f, "{source} (still failing at {bits} bits)"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

pub fn read_manifold(path: &Path) -> Result<ManifoldFile, RunError> {
    Ok(parse_manifold_file(&std::fs::read(path)?)?)
}

pub fn write_manifold(path: &Path, m: &ManifoldFile) -> Result<(), RunError> {
    Ok(std::fs::write(path, serialize_manifold_file(m))?)
}

/// Parses `[lo, hi]` or a single decimal.
pub fn parse_interval(s: &str, prec: usize) -> horotile_core::Result<Interval> {
    let t = s.trim();
    match t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(body) => {
            let (lo, hi) = body.split_once(',').ok_or_else(|| Error::Parse(format!("bad interval {t:?}")))?;
            let x = Interval::from_decimal_pair(lo, hi, prec)?;
            if x.is_empty() {
                return Err(Error::Parse(format!("empty interval {t:?}")));
            }
            Ok(x)
        }
        None => Interval::from_decimal(t, prec),
    }
}

pub fn format_bound(r: &ExtendedBound) -> String {
    match r {
        ExtendedBound::NegInfinity => "-inf".into(),
        ExtendedBound::Value(v) => v.to_decimal_pair().0,
    }
}

/// Runs `f` at `start` bits, doubling on insufficient precision up to `max`.
pub fn with_escalation<T>(
    start: usize,
    max: usize,
    mut f: impl FnMut(usize) -> horotile_core::Result<T>,
) -> Result<(T, usize), RunError> {
    let mut bits = start;
    loop {
        match f(bits) {
            Ok(v) => return Ok((v, bits)),
            Err(e) if e.is_precision() => {
                if bits * 2 > max {
                    return Err(RunError::PrecisionExhausted { bits, source: e });
                }
                bits *= 2;
            }
            Err(e) => return Err(e.into()),
        }
    }
}

/// Certified shapes and the developed polyhedron with unit cusp areas.
pub struct Session {
    pub certified: CertifiedShapes,
    pub polyhedron: DevelopedPolyhedron,
}

pub fn prepare(m: &ManifoldFile, prec: usize) -> horotile_core::Result<Session> {
    let z = m.shape_intervals(prec)?;
    let certified = krawczyk_certify(&m.triangulation, &z, prec)?;
    let t = &m.triangulation;
    let ones: Vec<Interval> = (0..t.num_cusps()).map(|_| Interval::one(prec)).collect();
    let cs = cross_sections_with_areas(t, &certified.shapes, &ones)?;
    let polyhedron = develop_polyhedron(t, &certified.shapes, &cs)?;
    polyhedron.check()?;
    Ok(Session { certified, polyhedron })
}

/// Object named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectSpec {
    /// Incenter of a tetrahedron.
    Point(usize),
    Cusp(usize),
    Word(String),
}

impl std::str::FromStr for ObjectSpec {
    type Err = String;

    /// `point:T`, `cusp:C` or `word:W`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| format!("expected KIND:ARG, got {s:?}"))?;
        let index = || arg.parse::<usize>().map_err(|_| format!("bad index in {s:?}"));
        match kind {
            "point" => Ok(ObjectSpec::Point(index()?)),
            "cusp" => Ok(ObjectSpec::Cusp(index()?)),
            "word" if !arg.is_empty() => Ok(ObjectSpec::Word(arg.to_string())),
            _ => Err(format!("unknown object {s:?}; use point:T, cusp:C or word:W")),
        }
    }
}

impl ObjectSpec {
    pub fn build(&self, p: &DevelopedPolyhedron) -> horotile_core::Result<GeometricObject> {
        match self {
            ObjectSpec::Point(t) => {
                if *t >= p.num_tetrahedra() {
                    return Err(Error::Unsupported(format!("no tetrahedron {t}")));
                }
                Ok(GeometricObject::incenter(p, *t))
            }
            ObjectSpec::Cusp(c) => GeometricObject::cusp(p, *c),
            ObjectSpec::Word(w) => GeometricObject::geodesic_word(p, w),
        }
    }
}

/// Output of one command in both renderings.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

fn istr(x: &Interval) -> String {
    x.to_string()
}

/// Rounds an exact decimal such as `-1.2345e-3` to `digits` significant
/// digits, away from zero when `away` and towards zero otherwise.
fn round_decimal(s: &str, digits: usize, away: bool) -> String {
    if s.contains("inf") {
        return s.to_string();
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (mant, exp) = body.split_once(['e', 'E']).unwrap_or((body, "0"));
    let mut exp: i64 = exp.parse().unwrap_or(0);
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int}{frac}");
    exp += int.len() as i64 - 1;
    let lead = all.bytes().take_while(|&b| b == b'0').count();
    if lead == all.len() {
        return "0".into();
    }
    exp -= lead as i64;
    let sig = &all.as_bytes()[lead..];
    let mut kept: Vec<u8> = sig.iter().take(digits).copied().collect();
    let dropped = sig.iter().skip(digits).any(|&b| b != b'0');
    if away && dropped {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, b'1');
                kept.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if kept[i] == b'9' {
                kept[i] = b'0';
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.len() > 1 && kept.last() == Some(&b'0') {
        kept.pop();
    }
    let digits = String::from_utf8(kept).expect("ascii digits");
    let (head, tail) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Outward rounded interval with `digits` significant digits.
pub fn short_interval(x: &Interval, digits: usize) -> String {
    let (lo, hi) = x.to_decimal_pair();
    let lo = round_decimal(&lo, digits, lo.starts_with('-'));
    let hi = round_decimal(&hi, digits, !hi.starts_with('-'));
    format!("[{lo}, {hi}]")
}

const TEXT_DIGITS: usize = 25;

fn tstr(x: &Interval) -> String {
    short_interval(x, TEXT_DIGITS)
}

fn vec_json(v: &MVector) -> Value {
    json!(v.0.iter().map(istr).collect::<Vec<_>>())
}

fn mat_json(m: &MMatrix) -> Value {
    json!(m.0.iter().map(|r| r.iter().map(istr).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn mat_text(m: &MMatrix) -> String {
    m.0.iter().flatten().map(|x| format!("{:.17e}", x.mid_f64())).collect::<Vec<_>>().join(" ")
}

fn matrix_json(a: &[Vec<Interval>]) -> Value {
    json!(a.iter().map(|r| r.iter().map(istr).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_text(a: &[Vec<Interval>]) -> String {
    a.iter().map(|r| r.iter().map(tstr).collect::<Vec<_>>().join("  ")).collect::<Vec<_>>().join("\n")
}

pub fn certify_report(s: &Session) -> Report {
    let c = &s.certified;
    let all_zero = c.residuals.iter().all(|r| r.contains_zero());
    let mut text = format!("certified at {} bits, max width {:.3e}\n", c.prec, c.max_width());
    for (i, z) in c.shapes.iter().enumerate() {
        let _ = writeln!(text, "z{i} = {} + {} i", tstr(&z.re), tstr(&z.im));
    }
    let _ = write!(text, "all {} residuals contain 0: {all_zero}", c.residuals.len());
    let json = json!({
        "precision": c.prec,
        "max_width": c.max_width(),
        "shapes": c.shapes.iter().map(|z| json!({"re": istr(&z.re), "im": istr(&z.im)})).collect::<Vec<_>>(),
        "selected_rows": c.selected_rows,
        "residuals_contain_zero": all_zero,
    });
    Report { text, json }
}

pub fn dump_polyhedron(s: &Session) -> Report {
    let p = &s.polyhedron;
    let mut tets = Vec::new();
    let mut text = String::new();
    for t in 0..p.num_tetrahedra() {
        tets.push(json!({
            "vertices": p.vertices[t].iter().map(vec_json).collect::<Vec<_>>(),
            "normals": p.normals[t].iter().map(vec_json).collect::<Vec<_>>(),
            "pairings": p.pairings[t].iter().map(mat_json).collect::<Vec<_>>(),
            "incenter": vec_json(&p.incenters[t].0),
            "inradius": istr(&p.inradii[t]),
        }));
        let _ = writeln!(text, "tetrahedron {t}");
        for (k, v) in p.vertices[t].iter().enumerate() {
            let _ = writeln!(text, "  vertex {k}: {}", v.0.iter().map(tstr).collect::<Vec<_>>().join(" "));
        }
        for (k, v) in p.normals[t].iter().enumerate() {
            let _ = writeln!(text, "  normal {k}: {}", v.0.iter().map(tstr).collect::<Vec<_>>().join(" "));
        }
        for (k, m) in p.pairings[t].iter().enumerate() {
            let _ = writeln!(text, "  pairing {k}: {}", m.0.iter().flatten().map(tstr).collect::<Vec<_>>().join(" "));
        }
        let _ = writeln!(text, "  inradius: {}", tstr(&p.inradii[t]));
    }
    let gens: Vec<Value> = p.generators.iter().map(|&(t, f)| json!([t, f])).collect();
    let _ = write!(text, "generators (tet, face): {:?}", p.generators);
    Report { text, json: json!({"tetrahedra": tets, "generators": gens}) }
}

pub fn trace_point(s: &Session, x: &[String; 4]) -> horotile_core::Result<Report> {
    let p = &s.polyhedron;
    let prec = p.prec();
    let v = MVector([
        parse_interval(&x[0], prec)?,
        parse_interval(&x[1], prec)?,
        parse_interval(&x[2], prec)?,
        parse_interval(&x[3], prec)?,
    ]);
    let pt = HPoint::from_timelike(&v)?;
    let tiles = trace(p, &pt, &TraceConfig::default())?;
    let text = tiles.iter().map(|l| format!("{} {}", l.t, mat_text(&l.m))).collect::<Vec<_>>().join("\n");
    let json = json!(tiles.iter().map(|l| json!({"t": l.t, "m": mat_json(&l.m)})).collect::<Vec<_>>());
    Ok(Report { text, json })
}

pub fn tile(s: &Session, obj: &ObjectSpec, count: usize) -> horotile_core::Result<Report> {
    let p = &s.polyhedron;
    let mut stream = TileStream::new(p, obj.build(p)?)?;
    let mut text = String::new();
    let mut events = Vec::new();
    for _ in 0..count {
        let Some(e) = stream.next_event()? else { break };
        let r = format_bound(&e.r);
        let _ = writeln!(text, "{} {} {} {}", e.index, r, mat_text(&e.m), e.t);
        events.push(json!({"index": e.index, "r": r, "m": mat_json(&e.m), "t": e.t}));
    }
    text.pop();
    Ok(Report { text, json: json!(events) })
}

fn status_name(s: DistanceStatus) -> &'static str {
    match s {
        DistanceStatus::Certified => "certified",
        DistanceStatus::EmbeddedDisjointOnly => "embedded-disjoint-only",
        DistanceStatus::Incomplete => "incomplete",
    }
}

pub fn distance(s: &Session, objs: &[ObjectSpec], max_tiles: usize) -> horotile_core::Result<Report> {
    let p = &s.polyhedron;
    let a = objs[0].build(p)?;
    let b = objs.get(1).map(|o| o.build(p)).transpose()?;
    let r = distances::compute_distance(p, &a, b.as_ref(), &DistanceConfig { max_tiles })?;
    let text = format!("{} ({}, tiles {} + {})", tstr(&r.value), status_name(r.status), r.tiles_used.0, r.tiles_used.1);
    let json = json!({
        "value": istr(&r.value),
        "status": status_name(r.status),
        "tiles": [r.tiles_used.0, r.tiles_used.1],
    });
    Ok(Report { text, json })
}

pub fn area_matrix(s: &Session, max_tiles: usize) -> horotile_core::Result<Vec<Vec<Interval>>> {
    distances::cusp_area_matrix(&s.polyhedron, &DistanceConfig { max_tiles })
}

pub fn cusp_area_matrix(s: &Session, max_tiles: usize) -> horotile_core::Result<Report> {
    let a = area_matrix(s, max_tiles)?;
    Ok(Report { text: matrix_text(&a), json: matrix_json(&a) })
}

fn areas_report(a: &[Interval]) -> Report {
    Report {
        text: a.iter().map(tstr).collect::<Vec<_>>().join("\n"),
        json: json!(a.iter().map(istr).collect::<Vec<_>>()),
    }
}

pub fn unbiased_areas(s: &Session, max_tiles: usize) -> horotile_core::Result<Report> {
    Ok(areas_report(&cusp_areas::unbiased_areas(&area_matrix(s, max_tiles)?)?))
}

pub fn greedy_areas(s: &Session, order: &[usize], max_tiles: usize) -> horotile_core::Result<Report> {
    Ok(areas_report(&cusp_areas::greedy_areas(&area_matrix(s, max_tiles)?, order)?))
}

/// Short slopes for the given cusp areas, or the unbiased ones.
pub fn slopes(s: &Session, areas: Option<&[String]>, max_tiles: usize) -> horotile_core::Result<Report> {
    let p = &s.polyhedron;
    let prec = p.prec();
    let areas: Vec<Interval> = match areas {
        Some(a) => {
            if a.len() != p.cross_sections.len() {
                return Err(Error::Parse(format!("{} areas given for {} cusps", a.len(), p.cross_sections.len())));
            }
            a.iter().map(|x| parse_interval(x, prec)).collect::<horotile_core::Result<_>>()?
        }
        None => cusp_areas::unbiased_areas(&area_matrix(s, max_tiles)?)?,
    };
    let shapes = cusp_areas::cusp_shapes(p)?;
    let short = cusp_areas::short_slopes(&shapes, &areas)?;
    let mut text = String::new();
    let mut cusps = Vec::new();
    for (c, list) in short.iter().enumerate() {
        let names: Vec<String> = list.iter().map(|s| format!("({}, {})", s.p, s.q)).collect();
        let _ = writeln!(text, "cusp {c} (area {}): {}", tstr(&areas[c]), names.join(" "));
        cusps.push(json!({
            "area": istr(&areas[c]),
            "shape": {"re": istr(&shapes[c].s.re), "im": istr(&shapes[c].s.im)},
            "slopes": list.iter().map(|s| json!([s.p, s.q])).collect::<Vec<_>>(),
        }));
    }
    text.pop();
    Ok(Report { text, json: json!(cusps) })
}

pub fn check_six_theorem(s: &Session, max_tiles: usize) -> horotile_core::Result<Report> {
    let a = area_matrix(s, max_tiles)?;
    let shapes = cusp_areas::cusp_shapes(&s.polyhedron)?;
    let alpha: Vec<Interval> = shapes.iter().map(cusp_areas::max_six_theorem_area).collect::<horotile_core::Result<_>>()?;
    let ok = cusp_areas::all_fillings_hyperbolic_check(&a, &shapes)?;
    let mut text = String::new();
    for (c, x) in alpha.iter().enumerate() {
        let _ = writeln!(text, "cusp {c}: alpha {}", tstr(x));
    }
    let _ = write!(text, "all fillings hyperbolic: {ok}");
    Ok(Report { text, json: json!({"alpha": alpha.iter().map(istr).collect::<Vec<_>>(), "all_fillings_hyperbolic": ok}) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_directed() {
        assert_eq!(round_decimal("1.23456e2", 3, false), "1.23e2");
        assert_eq!(round_decimal("1.23456e2", 3, true), "1.24e2");
        assert_eq!(round_decimal("9.996e-1", 3, true), "1e0");
        assert_eq!(round_decimal("-9.996e-1", 3, true), "-1e0");
        assert_eq!(round_decimal("0.0012500", 2, true), "1.3e-3");
        assert_eq!(round_decimal("0.0012000", 2, true), "1.2e-3");
        assert_eq!(round_decimal("0", 5, true), "0");
        assert_eq!(round_decimal("-inf", 5, true), "-inf");
    }

    #[test]
    fn short_interval_encloses() {
        let x = Interval::from_f64(1.0, 212).div(&Interval::from_f64(3.0, 212)).unwrap();
        for y in [x.clone(), x.neg()] {
            let s = short_interval(&y, 10);
            let back = parse_interval(&s, 212).unwrap();
            assert!(y.subset_of(&back), "{s}");
        }
        assert_eq!(short_interval(&x, 4), "[3.333e-1, 3.334e-1]");
    }
}
