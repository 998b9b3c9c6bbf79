//! Text format for triangulations with approximate shapes.
//!
//! See `FORMAT.md` in this crate for the grammar.

use crate::complex::ComplexInterval;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::triangulation::{Perm, Tetrahedron, Triangulation};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

/// Parsed contents of a manifold file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldFile {
    pub comments: Vec<String>,
    pub triangulation: Triangulation,
    /// Shapes verbatim as (real, imaginary) decimal strings.
    pub shapes: Vec<(String, String)>,
    pub precision_bits: usize,
}

impl ManifoldFile {
    /// Shapes as point enclosures of the decimal values at `prec` bits.
    pub fn shape_intervals(&self, prec: usize) -> Result<Vec<ComplexInterval>> {
        self.shapes
            .iter()
            .map(|(re, im)| {
                let r = Interval::from_decimal(re, prec)?.mid_interval();
                let i = Interval::from_decimal(im, prec)?.mid_interval();
                Ok(ComplexInterval::new(r, i))
            })
            .collect()
    }
}

struct Lines<'a> {
    it: core::iter::Peekable<core::iter::Enumerate<core::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank, non-comment line split into tokens.
    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        for (no, line) in self.it.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok((no + 1, t.split_whitespace().collect()));
        }
        Err(Error::Parse("unexpected end of file".into()))
    }

    fn keyword(&mut self, key: &str, count: usize) -> Result<(usize, Vec<&'a str>)> {
        let (no, toks) = self.next()?;
        if toks[0] != key {
            return Err(Error::Parse(format!("line {no}: expected `{key}`, found `{}`", toks[0])));
        }
        if toks.len() != count + 1 {
            return Err(Error::Parse(format!("line {no}: `{key}` takes {count} values")));
        }
        Ok((no, toks[1..].to_vec()))
    }
}

fn int<T: core::str::FromStr>(no: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("line {no}: bad integer `{s}`")))
}

fn four<T: core::str::FromStr + Copy + Default>(no: usize, toks: &[&str]) -> Result<[T; 4]> {
    let mut out = [T::default(); 4];
    for (o, t) in out.iter_mut().zip(toks) {
        *o = int(no, t)?;
    }
    Ok(out)
}

fn check_decimal(no: usize, s: &str) -> Result<()> {
    // the real parse happens at a chosen precision later
    Interval::from_decimal(s, 64).map_err(|_| Error::Parse(format!("line {no}: bad decimal `{s}`")))?;
    Ok(())
}

/// Parses and validates a manifold file.
pub fn parse_manifold_file(bytes: &[u8]) -> Result<ManifoldFile> {
    let text = core::str::from_utf8(bytes).map_err(|_| Error::Parse("file is not UTF-8".into()))?;
    let comments = text
        .lines()
        .map(str::trim)
        .take_while(|l| l.is_empty() || l.starts_with('#'))
        .filter(|l| !l.is_empty())
        .map(|l| l.to_string())
        .collect();
    let mut lines = Lines { it: text.lines().enumerate().peekable() };
    let (no, v) = lines.keyword("num_tetrahedra", 1)?;
    let n: usize = int(no, v[0])?;
    let (no, v) = lines.keyword("precision_bits", 1)?;
    let precision_bits: usize = int(no, v[0])?;
    if precision_bits < 2 {
        return Err(Error::Parse(format!("line {no}: precision_bits must be at least 2")));
    }
    let mut tets = Vec::with_capacity(n);
    let mut shapes = Vec::with_capacity(n);
    for k in 0..n {
        let (no, v) = lines.keyword("tetrahedron", 1)?;
        if int::<usize>(no, v[0])? != k {
            return Err(Error::Parse(format!("line {no}: expected tetrahedron {k}")));
        }
        let (no, v) = lines.keyword("neighbors", 4)?;
        let neighbors: [usize; 4] = four(no, &v)?;
        let (no, v) = lines.keyword("gluings", 4)?;
        let mut gluings = [Perm::IDENTITY; 4];
        for (g, s) in gluings.iter_mut().zip(&v) {
            *g = Perm::parse(s).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        }
        let (no, v) = lines.keyword("cusps", 4)?;
        let cusps: [usize; 4] = four(no, &v)?;
        lines.keyword("peripheral", 0)?;
        let mut tables = [[[0i32; 4]; 4]; 2];
        for table in tables.iter_mut() {
            for row in table.iter_mut() {
                let (no, v) = lines.next()?;
                if v.len() != 4 {
                    return Err(Error::Parse(format!("line {no}: peripheral rows have 4 integers")));
                }
                *row = four(no, &v)?;
            }
        }
        let (no, v) = lines.keyword("shape", 2)?;
        check_decimal(no, v[0])?;
        check_decimal(no, v[1])?;
        shapes.push((v[0].to_string(), v[1].to_string()));
        tets.push(Tetrahedron { neighbors, gluings, cusps, meridian: tables[0], longitude: tables[1] });
    }
    if let Ok((no, _)) = lines.next() {
        return Err(Error::Parse(format!("line {no}: trailing content")));
    }
    let triangulation = Triangulation::new(tets)?;
    Ok(ManifoldFile { comments, triangulation, shapes, precision_bits })
}

/// Writes the canonical text form.
pub fn serialize_manifold_file(m: &ManifoldFile) -> String {
    let mut s = String::new();
    for c in &m.comments {
        let _ = writeln!(s, "{c}");
    }
    let t = &m.triangulation;
    let _ = writeln!(s, "num_tetrahedra {}", t.num_tetrahedra());
    let _ = writeln!(s, "precision_bits {}", m.precision_bits);
    for (k, tet) in t.tets.iter().enumerate() {
        let _ = writeln!(s, "tetrahedron {k}");
        let nb = tet.neighbors;
        let _ = writeln!(s, "neighbors {} {} {} {}", nb[0], nb[1], nb[2], nb[3]);
        let g: Vec<String> = tet.gluings.iter().map(|p| p.to_digits()).collect();
        let _ = writeln!(s, "gluings {}", g.join(" "));
        let c = tet.cusps;
        let _ = writeln!(s, "cusps {} {} {} {}", c[0], c[1], c[2], c[3]);
        let _ = writeln!(s, "peripheral");
        for table in [&tet.meridian, &tet.longitude] {
            for row in table {
                let _ = writeln!(s, "  {:>2} {:>2} {:>2} {:>2}", row[0], row[1], row[2], row[3]);
            }
        }
        let (re, im) = &m.shapes[k];
        let _ = writeln!(s, "shape {re} {im}");
    }
    s
}
