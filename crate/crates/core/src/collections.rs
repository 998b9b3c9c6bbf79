//! Associative containers keyed by interval enclosures.

use crate::error::{Error, Result};
use crate::geometry::{line_projection_offset, ClosedGeodesic, HPoint};
use crate::interval::Interval;
use crate::minkowski::{MMatrix, MVector};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

const NIL: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Node<T, V> {
    lo: T,
    hi: T,
    max: T,
    red: bool,
    left: usize,
    right: usize,
    parent: usize,
    value: V,
}

/// Red-black tree of closed intervals ordered by left endpoint, each node
/// annotated with the largest right endpoint in its subtree.
#[derive(Clone, Debug)]
pub struct IntervalTree<T, V> {
    nodes: Vec<Node<T, V>>,
    root: usize,
}

impl<T: PartialOrd + Copy, V> Default for IntervalTree<T, V> {
    fn default() -> Self {
        Self::new()
    }
}

fn larger<T: PartialOrd + Copy>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

impl<T: PartialOrd + Copy, V> IntervalTree<T, V> {
    pub fn new() -> Self {
        IntervalTree { nodes: Vec::new(), root: NIL }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn refresh(&mut self, x: usize) {
        let mut m = self.nodes[x].hi;
        for c in [self.nodes[x].left, self.nodes[x].right] {
            if c != NIL {
                m = larger(m, self.nodes[c].max);
            }
        }
        self.nodes[x].max = m;
    }

    fn replace_child(&mut self, parent: usize, old: usize, new: usize) {
        if parent == NIL {
            self.root = new;
        } else if self.nodes[parent].left == old {
            self.nodes[parent].left = new;
        } else {
            self.nodes[parent].right = new;
        }
    }

    fn rotate_left(&mut self, x: usize) {
        let y = self.nodes[x].right;
        let b = self.nodes[y].left;
        self.nodes[x].right = b;
        if b != NIL {
            self.nodes[b].parent = x;
        }
        let p = self.nodes[x].parent;
        self.nodes[y].parent = p;
        self.replace_child(p, x, y);
        self.nodes[y].left = x;
        self.nodes[x].parent = y;
        self.refresh(x);
        self.refresh(y);
    }

    fn rotate_right(&mut self, x: usize) {
        let y = self.nodes[x].left;
        let b = self.nodes[y].right;
        self.nodes[x].left = b;
        if b != NIL {
            self.nodes[b].parent = x;
        }
        let p = self.nodes[x].parent;
        self.nodes[y].parent = p;
        self.replace_child(p, x, y);
        self.nodes[y].right = x;
        self.nodes[x].parent = y;
        self.refresh(x);
        self.refresh(y);
    }

    fn is_red(&self, x: usize) -> bool {
        x != NIL && self.nodes[x].red
    }

    /// Inserts `[lo, hi]`; equal left endpoints go to the right.
    pub fn insert(&mut self, lo: T, hi: T, value: V) {
        let z = self.nodes.len();
        self.nodes.push(Node { lo, hi, max: hi, red: true, left: NIL, right: NIL, parent: NIL, value });
        let mut parent = NIL;
        let mut cur = self.root;
        while cur != NIL {
            parent = cur;
            self.nodes[cur].max = larger(self.nodes[cur].max, hi);
            cur = if lo < self.nodes[cur].lo { self.nodes[cur].left } else { self.nodes[cur].right };
        }
        self.nodes[z].parent = parent;
        if parent == NIL {
            self.root = z;
        } else if lo < self.nodes[parent].lo {
            self.nodes[parent].left = z;
        } else {
            self.nodes[parent].right = z;
        }
        self.fix_insert(z);
    }

    fn fix_insert(&mut self, mut z: usize) {
        while self.is_red(self.nodes[z].parent) {
            let p = self.nodes[z].parent;
            let g = self.nodes[p].parent;
            if p == self.nodes[g].left {
                let u = self.nodes[g].right;
                if self.is_red(u) {
                    self.nodes[p].red = false;
                    self.nodes[u].red = false;
                    self.nodes[g].red = true;
                    z = g;
                    continue;
                }
                if z == self.nodes[p].right {
                    z = p;
                    self.rotate_left(z);
                }
                let p = self.nodes[z].parent;
                let g = self.nodes[p].parent;
                self.nodes[p].red = false;
                self.nodes[g].red = true;
                self.rotate_right(g);
            } else {
                let u = self.nodes[g].left;
                if self.is_red(u) {
                    self.nodes[p].red = false;
                    self.nodes[u].red = false;
                    self.nodes[g].red = true;
                    z = g;
                    continue;
                }
                if z == self.nodes[p].left {
                    z = p;
                    self.rotate_right(z);
                }
                let p = self.nodes[z].parent;
                let g = self.nodes[p].parent;
                self.nodes[p].red = false;
                self.nodes[g].red = true;
                self.rotate_left(g);
            }
        }
        let r = self.root;
        self.nodes[r].red = false;
    }

    /// All stored entries whose interval meets `[lo, hi]`.
    pub fn stabbing_query(&self, lo: T, hi: T) -> Vec<(T, T, &V)> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            if x == NIL {
                continue;
            }
            let n = &self.nodes[x];
            if n.max < lo {
                continue;
            }
            stack.push(n.left);
            if n.lo > hi {
                continue;
            }
            if n.hi >= lo {
                out.push((n.lo, n.hi, &n.value));
            }
            stack.push(n.right);
        }
        out
    }

    /// Checks ordering, annotations, parent links and the red-black rules.
    pub fn validate(&self) -> core::result::Result<(), String> {
        if self.root == NIL {
            return if self.nodes.is_empty() { Ok(()) } else { Err("nodes unreachable".into()) };
        }
        if self.nodes[self.root].red {
            return Err("red root".into());
        }
        if self.nodes[self.root].parent != NIL {
            return Err("root has a parent".into());
        }
        let mut count = 0;
        self.check(self.root, None, None, &mut count)?;
        if count != self.nodes.len() {
            return Err(format!("reached {count} of {} nodes", self.nodes.len()));
        }
        Ok(())
    }

    // returns black height; keys must lie in [lower, upper] (rotations move
    // equal keys to either side)
    fn check(&self, x: usize, lower: Option<T>, upper: Option<T>, count: &mut usize) -> core::result::Result<usize, String> {
        if x == NIL {
            return Ok(1);
        }
        *count += 1;
        let n = &self.nodes[x];
        if lower.is_some_and(|l| n.lo < l) || upper.is_some_and(|u| n.lo > u) {
            return Err("search order violated".into());
        }
        let mut m = n.hi;
        for (c, is_left) in [(n.left, true), (n.right, false)] {
            if c == NIL {
                continue;
            }
            let cn = &self.nodes[c];
            if cn.parent != x {
                return Err("broken parent link".into());
            }
            if n.red && cn.red {
                return Err("red node with red child".into());
            }
            if (is_left && cn.lo > n.lo) || (!is_left && cn.lo < n.lo) {
                return Err("order violated".into());
            }
            m = larger(m, cn.max);
        }
        if m != n.max {
            return Err("max annotation wrong".into());
        }
        let l = self.check(n.left, lower, Some(n.lo), count)?;
        let r = self.check(n.right, Some(n.lo), upper, count)?;
        if l != r {
            return Err("black heights differ".into());
        }
        Ok(l + usize::from(!n.red))
    }

    /// Height of the tree (longest root to leaf path).
    pub fn height(&self) -> usize {
        fn h<T, V>(t: &IntervalTree<T, V>, x: usize) -> usize {
            if x == NIL {
                0
            } else {
                1 + h(t, t.nodes[x].left).max(h(t, t.nodes[x].right))
            }
        }
        h(self, self.root)
    }

    /// Entries in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (T, T, &V)> {
        self.nodes.iter().map(|n| (n.lo, n.hi, &n.value))
    }
}

impl<V> IntervalTree<f64, V> {
    /// Stores the interval rounded outwards to doubles.
    pub fn insert_interval(&mut self, key: &Interval, value: V) {
        let (lo, hi) = key.to_f64_bounds();
        self.insert(lo, hi, value);
    }

    /// Superset of the entries meeting `q` (keys are rounded outwards).
    pub fn query_interval(&self, q: &Interval) -> Vec<(f64, f64, &V)> {
        let (lo, hi) = q.to_f64_bounds();
        self.stabbing_query(lo, hi)
    }
}

/// Dictionary whose keys are only known through enclosures: candidates
/// are found by hash overlap and confirmed by a three-valued equality.
#[derive(Clone, Debug)]
pub struct HashDictionary<K, V> {
    tree: IntervalTree<f64, usize>,
    entries: Vec<(K, V)>,
}

impl<K, V> Default for HashDictionary<K, V> {
    fn default() -> Self {
        HashDictionary { tree: IntervalTree::new(), entries: Vec::new() }
    }
}

impl<K, V> HashDictionary<K, V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: K, hash: &Interval, value: V) {
        self.tree.insert_interval(hash, self.entries.len());
        self.entries.push((key, value));
    }

    fn find(&self, key: &K, hash: &Interval, eq: impl Fn(&K, &K) -> Option<bool>) -> Result<Option<usize>> {
        let mut undecided = false;
        for (_, _, &i) in self.tree.query_interval(hash) {
            match eq(&self.entries[i].0, key) {
                Some(true) => return Ok(Some(i)),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if undecided {
            Err(Error::InsufficientPrecision("dictionary lookup ambiguous"))
        } else {
            Ok(None)
        }
    }

    pub fn lookup(&self, key: &K, hash: &Interval, eq: impl Fn(&K, &K) -> Option<bool>) -> Result<Option<&V>> {
        Ok(self.find(key, hash, eq)?.map(|i| &self.entries[i].1))
    }

    pub fn lookup_mut(&mut self, key: &K, hash: &Interval, eq: impl Fn(&K, &K) -> Option<bool>) -> Result<Option<&mut V>> {
        Ok(self.find(key, hash, eq)?.map(move |i| &mut self.entries[i].1))
    }

    pub fn entries(&self) -> impl Iterator<Item = &(K, V)> {
        self.entries.iter()
    }
}

/// Certified comparison on a discrete subset of `H^3` and the light
/// cone: `Some(true)` if `-x.y < b`, `Some(false)` if `-x.y >= b`.
pub fn eq_b(x: &MVector, y: &MVector, b: &Interval) -> Option<bool> {
    let v = x.dot(y).neg();
    if v.lt(b) == Some(true) {
        Some(true)
    } else if crate::bigfloat::le(b.hi(), v.lo()) {
        Some(false)
    } else {
        None
    }
}

/// `x . mu` with `mu = (1, 0, 0, 0)`, that is `-x_0`.
pub fn hash_mu(x: &MVector) -> Interval {
    x.0[0].neg()
}

/// Hash dictionary on points of `H^3` (or light-like vectors) separated
/// by the bound `b`.
#[derive(Clone, Debug)]
pub struct VectorDictionary<V> {
    pub b: Interval,
    inner: HashDictionary<MVector, V>,
}

impl<V> VectorDictionary<V> {
    pub fn new(b: Interval) -> Self {
        VectorDictionary { b, inner: HashDictionary::new() }
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn insert(&mut self, key: MVector, value: V) {
        let h = hash_mu(&key);
        self.inner.insert(key, &h, value);
    }

    pub fn lookup(&self, key: &MVector) -> Result<Option<&V>> {
        let b = &self.b;
        self.inner.lookup(key, &hash_mu(key), |a, k| eq_b(a, k, b))
    }

    pub fn lookup_mut(&mut self, key: &MVector) -> Result<Option<&mut V>> {
        let b = self.b.clone();
        let h = hash_mu(key);
        self.inner.lookup_mut(key, &h, move |a, k| eq_b(a, k, &b))
    }
}

/// Choice function returning candidates that include the canonical
/// representative of the class of a key.
pub type Choice = Box<dyn Fn(&MVector) -> Result<Vec<MVector>> + Send + Sync>;

/// Dictionary on equivalence classes. All candidate representatives
/// alias the same value slot.
pub struct QuotientDictionary<V> {
    base: VectorDictionary<usize>,
    values: Vec<V>,
    choice: Choice,
}

impl<V> QuotientDictionary<V> {
    pub fn new(b: Interval, choice: Choice) -> Self {
        QuotientDictionary { base: VectorDictionary::new(b), values: Vec::new(), choice }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn slot(&self, key: &MVector) -> Result<(Option<usize>, Vec<MVector>)> {
        let cands = (self.choice)(key)?;
        for c in &cands {
            if let Some(&i) = self.base.lookup(c)? {
                return Ok((Some(i), cands));
            }
        }
        Ok((None, cands))
    }

    pub fn lookup(&self, key: &MVector) -> Result<Option<&V>> {
        Ok(self.slot(key)?.0.map(|i| &self.values[i]))
    }

    pub fn lookup_mut(&mut self, key: &MVector) -> Result<Option<&mut V>> {
        let i = self.slot(key)?.0;
        Ok(i.map(move |i| &mut self.values[i]))
    }

    /// Inserts unless the class is present; returns whether it was new.
    pub fn insert(&mut self, key: &MVector, value: V) -> Result<bool> {
        let (found, cands) = self.slot(key)?;
        if found.is_some() {
            return Ok(false);
        }
        let i = self.values.len();
        self.values.push(value);
        for c in cands {
            self.base.insert(c, i);
        }
        Ok(true)
    }
}

/// Enclosure of `floor(d)` may span at most this many integers.
pub const K_MAX: usize = 3;

/// Candidates `h^-i x` for every integer `i` that `floor(d(x))` may take,
/// where `d(x)` is the offset of `x` along the axis from the midpoint in
/// units of the translation length.
pub fn choice_pi_k(g: &ClosedGeodesic, x: &MVector) -> Result<Vec<MVector>> {
    let mid = g.line.midpoint()?;
    let d = line_projection_offset(&g.line, &mid, &HPoint(x.clone()))?.div(&g.length)?;
    let (lo, hi) = (d.floor().lo_f64(), d.floor().hi_f64());
    if !(lo.is_finite() && hi.is_finite()) || hi - lo + 1.0 > K_MAX as f64 {
        return Err(Error::InsufficientPrecision("fundamental domain of the axis ambiguous"));
    }
    let (lo, hi) = (lo as i64, hi as i64);
    let step = |v: &MVector, i: i64| -> MVector {
        let (m, k): (&MMatrix, i64) = if i >= 0 { (&g.inverse, i) } else { (&g.holonomy, -i) };
        let mut out = v.clone();
        for _ in 0..k {
            out = m.apply(&out);
        }
        out
    };
    let mut out = Vec::new();
    let mut cur = step(x, lo);
    for _ in lo..=hi {
        out.push(cur.clone());
        cur = g.inverse.apply(&cur);
    }
    Ok(out)
}

/// How lifted tetrahedra are identified in the quotient by the stabilizer
/// of the object.
#[derive(Clone, Debug)]
pub enum LiftKind {
    /// Key `m p` for the incenter `p` of a fixed tetrahedron, `b = cosh r`.
    Point { p: MVector, b: Interval },
    /// Key `m^-1 l`, `b = s^2`.
    Horoball { l: MVector, b: Interval },
    /// Key `pi_K(m p)`, `b = cosh r`.
    Line { p: MVector, b: Interval, geodesic: ClosedGeodesic },
}

enum TetDict {
    Plain(VectorDictionary<()>),
    Quotient(QuotientDictionary<()>),
}

/// Set of lifted tetrahedra `(Gamma_K m, t)`.
pub struct LiftedTetSet {
    kind: LiftKind,
    per_tet: Vec<TetDict>,
    count: usize,
}

impl LiftedTetSet {
    pub fn new(kind: LiftKind, num_tets: usize) -> Result<LiftedTetSet> {
        let b = match &kind {
            LiftKind::Point { b, .. } | LiftKind::Horoball { b, .. } | LiftKind::Line { b, .. } => b.clone(),
        };
        if !b.is_positive() {
            return Err(Error::Domain("separation bound must be positive"));
        }
        if matches!(kind, LiftKind::Point { .. } | LiftKind::Line { .. }) && b.contains_f64(1.0) {
            return Err(Error::Domain("separation bound must exclude 1"));
        }
        let per_tet = (0..num_tets)
            .map(|_| match &kind {
                LiftKind::Line { geodesic, .. } => {
                    let g = geodesic.clone();
                    TetDict::Quotient(QuotientDictionary::new(b.clone(), Box::new(move |x| choice_pi_k(&g, x))))
                }
                _ => TetDict::Plain(VectorDictionary::new(b.clone())),
            })
            .collect();
        Ok(LiftedTetSet { kind, per_tet, count: 0 })
    }

    pub fn kind(&self) -> &LiftKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn key(&self, m: &MMatrix) -> MVector {
        match &self.kind {
            LiftKind::Point { p, .. } | LiftKind::Line { p, .. } => m.apply(p),
            LiftKind::Horoball { l, .. } => m.o13_inverse().apply(l),
        }
    }

    pub fn contains(&self, m: &MMatrix, t: usize) -> Result<bool> {
        let k = self.key(m);
        match &self.per_tet[t] {
            TetDict::Plain(d) => Ok(d.lookup(&k)?.is_some()),
            TetDict::Quotient(d) => Ok(d.lookup(&k)?.is_some()),
        }
    }

    /// Adds `(m, t)` unless present; returns whether it was new.
    pub fn insert(&mut self, m: &MMatrix, t: usize) -> Result<bool> {
        let k = self.key(m);
        let new = match &mut self.per_tet[t] {
            TetDict::Plain(d) => {
                if d.lookup(&k)?.is_some() {
                    false
                } else {
                    d.insert(k, ());
                    true
                }
            }
            TetDict::Quotient(d) => d.insert(&k, ())?,
        };
        self.count += usize::from(new);
        Ok(new)
    }
}
