//! Combinatorial ideal triangulations.

use crate::error::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Permutation of the vertices {0,1,2,3}; `self.0[i]` is the image of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Result<Perm> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return Err(Error::InvalidTriangulation(format!("not a permutation: {images:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Parses the four digit form, e.g. `"0132"`.
    pub fn parse(s: &str) -> Result<Perm> {
        let b = s.as_bytes();
        if b.len() != 4 || !b.iter().all(|c| (b'0'..=b'3').contains(c)) {
            return Err(Error::InvalidTriangulation(format!("bad permutation {s:?}")));
        }
        Perm::new([b[0] - b'0', b[1] - b'0', b[2] - b'0', b[3] - b'0'])
    }

    pub fn to_digits(&self) -> String {
        self.0.iter().map(|d| (b'0' + d) as char).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(&self) -> Perm {
        let mut r = [0u8; 4];
        for i in 0..4 {
            r[self.0[i] as usize] = i as u8;
        }
        Perm(r)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        // (self o other)(i) = self(other(i))
        Perm([self.0[other.0[0] as usize], self.0[other.0[1] as usize], self.0[other.0[2] as usize], self.0[other.0[3] as usize]])
    }

    pub fn is_odd(&self) -> bool {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }
}

/// Index of edge `{i, j}` in the order 01, 02, 03, 12, 13, 23.
pub fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {i}{j}"),
    }
}

pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Which of `z`, `1/(1-z)`, `1-1/z` sits on the edge `{i, j}`.
pub fn edge_shape_kind(i: usize, j: usize) -> usize {
    match edge_index(i, j) {
        0 | 5 => 0,
        1 | 4 => 1,
        _ => 2,
    }
}

/// For a vertex `v`, the other three vertices `(p, q, r)` such that
/// `(v, p, q, r)` is an even permutation. Seen from `v` the corners
/// `p, q, r` of the cusp triangle are then counterclockwise.
pub fn corners_ccw(v: usize) -> [usize; 3] {
    match v {
        0 => [1, 2, 3],
        1 => [0, 3, 2],
        2 => [0, 1, 3],
        3 => [0, 2, 1],
        _ => panic!("vertex out of range"),
    }
}

/// One tetrahedron of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    pub neighbors: [usize; 4],
    pub gluings: [Perm; 4],
    pub cusps: [usize; 4],
    /// Net number of times the meridian enters the cusp triangle at vertex
    /// `v` through its side on face `f`, indexed `[v][f]`.
    pub meridian: [[i32; 4]; 4],
    pub longitude: [[i32; 4]; 4],
}

/// An oriented ideal triangulation with torus cusps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub tets: Vec<Tetrahedron>,
    num_cusps: usize,
}

/// A class of identified (tet, vertex) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub members: Vec<(usize, usize)>,
}

/// A class of identified (tet, edge index) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub members: Vec<(usize, usize)>,
}

/// Kind and index of a gluing equation row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Edge(usize),
    Meridian(usize),
    Longitude(usize),
}

/// Exponents `(a, b, c)` of `z`, `1/(1-z)`, `1-1/z` per tetrahedron for
/// each equation. Edge rows have constant `2 pi i`, cusp rows `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingEquations {
    pub rows: Vec<Vec<[i32; 3]>>,
    pub kinds: Vec<RowKind>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
    /// Classes in order of their smallest member.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut index = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let r = self.find(i);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(i);
        }
        out
    }
}

impl Triangulation {
    /// Builds and validates a triangulation.
    pub fn new(tets: Vec<Tetrahedron>) -> Result<Triangulation> {
        let num_cusps = tets.iter().flat_map(|t| t.cusps.iter()).copied().max().map_or(0, |m| m + 1);
        let t = Triangulation { tets, num_cusps };
        t.validate()?;
        Ok(t)
    }

    /// Builds without validating vertex links or peripheral curves.
    pub fn new_unchecked(tets: Vec<Tetrahedron>) -> Triangulation {
        let num_cusps = tets.iter().flat_map(|t| t.cusps.iter()).copied().max().map_or(0, |m| m + 1);
        Triangulation { tets, num_cusps }
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.tets.len()
    }

    pub fn num_cusps(&self) -> usize {
        self.num_cusps
    }

    fn bad<T>(msg: String) -> Result<T> {
        Err(Error::InvalidTriangulation(msg))
    }

    fn validate(&self) -> Result<()> {
        let n = self.tets.len();
        if n == 0 {
            return Self::bad("no tetrahedra".into());
        }
        for (ti, t) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let nb = t.neighbors[f];
                if nb >= n {
                    return Self::bad(format!("tet {ti} face {f}: neighbor {nb} out of range"));
                }
                let g = t.gluings[f];
                if !g.is_odd() {
                    return Self::bad(format!("tet {ti} face {f}: gluing {} is not orientation reversing", g.to_digits()));
                }
                let f2 = g.apply(f);
                let other = &self.tets[nb];
                if other.neighbors[f2] != ti || other.gluings[f2] != g.inverse() {
                    return Self::bad(format!("tet {ti} face {f}: gluing is not symmetric"));
                }
                if nb == ti && f2 == f {
                    return Self::bad(format!("tet {ti} face {f} glued to itself"));
                }
                for v in 0..4 {
                    if v != f && t.cusps[v] != other.cusps[g.apply(v)] {
                        return Self::bad(format!("tet {ti} face {f}: cusp labels disagree across the gluing"));
                    }
                }
            }
        }
        let classes = self.vertex_classes();
        if classes.len() != self.num_cusps {
            return Self::bad(format!(
                "cusp labels name {} cusps but there are {} vertex classes",
                self.num_cusps,
                classes.len()
            ));
        }
        let mut seen = vec![false; self.num_cusps];
        for cls in &classes {
            let (t, v) = cls.members[0];
            let c = self.tets[t].cusps[v];
            if seen[c] {
                return Self::bad(format!("cusp label {c} is used by two vertex classes"));
            }
            seen[c] = true;
        }
        let edges = self.edge_classes();
        if edges.len() != n {
            return Self::bad(format!("{} edge classes for {n} tetrahedra; not a cusped manifold", edges.len()));
        }
        // Euler characteristic of each vertex link
        let mut ends = vec![0i64; self.num_cusps];
        for e in &edges {
            let (t, ei) = e.members[0];
            let (a, b) = EDGE_VERTICES[ei];
            ends[self.tets[t].cusps[a]] += 1;
            ends[self.tets[t].cusps[b]] += 1;
        }
        for cls in &classes {
            let (t, v) = cls.members[0];
            let c = self.tets[t].cusps[v];
            let faces = cls.members.len() as i64;
            let chi = ends[c] - 3 * faces / 2 + faces;
            if chi != 0 {
                return Self::bad(format!("link of cusp {c} has Euler characteristic {chi}, not a torus"));
            }
        }
        for (ti, t) in self.tets.iter().enumerate() {
            for v in 0..4 {
                for curve in [&t.meridian, &t.longitude] {
                    if curve[v][v] != 0 {
                        return Self::bad(format!("tet {ti} vertex {v}: peripheral weight on face {v}"));
                    }
                    let s: i32 = (0..4).map(|f| curve[v][f]).sum();
                    if s != 0 {
                        return Self::bad(format!("tet {ti} vertex {v}: peripheral weights do not balance"));
                    }
                }
                for f in 0..4 {
                    if f == v {
                        continue;
                    }
                    let g = t.gluings[f];
                    let o = &self.tets[t.neighbors[f]];
                    let (v2, f2) = (g.apply(v), g.apply(f));
                    if t.meridian[v][f] != -o.meridian[v2][f2] || t.longitude[v][f] != -o.longitude[v2][f2] {
                        return Self::bad(format!("tet {ti} vertex {v} face {f}: peripheral curve is not closed"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex classes in order of first appearance of (tet, vertex).
    pub fn vertex_classes(&self) -> Vec<VertexClass> {
        let n = self.tets.len();
        let mut uf = UnionFind::new(4 * n);
        for (ti, t) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let g = t.gluings[f];
                for v in 0..4 {
                    if v != f {
                        uf.union(4 * ti + v, 4 * t.neighbors[f] + g.apply(v));
                    }
                }
            }
        }
        uf.classes()
            .into_iter()
            .map(|c| VertexClass { members: c.into_iter().map(|i| (i / 4, i % 4)).collect() })
            .collect()
    }

    /// Edge classes in order of first appearance of (tet, edge index).
    pub fn edge_classes(&self) -> Vec<EdgeClass> {
        let n = self.tets.len();
        let mut uf = UnionFind::new(6 * n);
        for (ti, t) in self.tets.iter().enumerate() {
            for (e, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
                for f in 0..4 {
                    if f == i || f == j {
                        continue;
                    }
                    let g = t.gluings[f];
                    let e2 = edge_index(g.apply(i), g.apply(j));
                    uf.union(6 * ti + e, 6 * t.neighbors[f] + e2);
                }
            }
        }
        uf.classes()
            .into_iter()
            .map(|c| EdgeClass { members: c.into_iter().map(|i| (i / 6, i % 6)).collect() })
            .collect()
    }

    /// Edge equations followed by meridian and longitude rows per cusp.
    pub fn gluing_equations(&self) -> GluingEquations {
        let n = self.tets.len();
        let mut rows = Vec::new();
        let mut kinds = Vec::new();
        for (k, e) in self.edge_classes().iter().enumerate() {
            let mut row = vec![[0i32; 3]; n];
            for &(t, ei) in &e.members {
                let (a, b) = EDGE_VERTICES[ei];
                row[t][edge_shape_kind(a, b)] += 1;
            }
            rows.push(row);
            kinds.push(RowKind::Edge(k));
        }
        for c in 0..self.num_cusps {
            rows.push(self.cusp_row(c, false));
            kinds.push(RowKind::Meridian(c));
            rows.push(self.cusp_row(c, true));
            kinds.push(RowKind::Longitude(c));
        }
        GluingEquations { rows, kinds }
    }

    fn cusp_row(&self, cusp: usize, longitude: bool) -> Vec<[i32; 3]> {
        let mut row = vec![[0i32; 3]; self.tets.len()];
        for (ti, t) in self.tets.iter().enumerate() {
            let w = if longitude { &t.longitude } else { &t.meridian };
            for v in 0..4 {
                if t.cusps[v] != cusp {
                    continue;
                }
                let [p, q, r] = corners_ccw(v);
                // corner p lies between the sides on faces r and q, and so on
                for (corner, from, to) in [(p, r, q), (q, p, r), (r, q, p)] {
                    let k = flow(w[v][from], w[v][to]);
                    row[ti][edge_shape_kind(v, corner)] += k;
                }
            }
        }
        row
    }

    /// The (tet, vertex) pairs of cusp `c`, in order of first appearance.
    pub fn cusp_members(&self, c: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ti, t) in self.tets.iter().enumerate() {
            for v in 0..4 {
                if t.cusps[v] == c {
                    out.push((ti, v));
                }
            }
        }
        out
    }

    /// Cusp of vertex `v` of tet `t`.
    pub fn cusp_of(&self, t: usize, v: usize) -> usize {
        self.tets[t].cusps[v]
    }
}

/// Signed number of strands running from the side with net inflow `a` to
/// the side with net inflow `b` around the corner between them.
pub fn flow(a: i32, b: i32) -> i32 {
    if a > 0 && b < 0 {
        a.min(-b)
    } else if a < 0 && b > 0 {
        -((-a).min(b))
    } else {
        0
    }
}
