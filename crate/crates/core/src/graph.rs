//! Labeled defining graphs and their classification.
//!
//! A [`DefiningGraph`] stores generator names in declaration order and a
//! symmetric label matrix. A missing edge means the label is ∞. Subsets of
//! generators are [`GenSet`] bitmasks over the declaration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyc, CyclotomicRing};
use crate::error::{Error, Result};
use crate::genset::{GenSet, MAX_GENERATORS};

/// Edge label; `None` is ∞.
pub type Label = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    labels: Vec<Vec<Label>>,
}

/// JSON mirror of the text grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetKind {
    FiniteType,
    InfiniteType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetClass {
    pub subset: GenSet,
    pub kind: SubsetKind,
    pub irreducible: bool,
    /// `None` when the Coxeter group is infinite.
    pub coxeter_order: Option<u128>,
}

/// Irreducible finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    pub fn order(self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => (1u128 << n) * fact(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * fact(n),
            FiniteType::E6 => 51_840,
            FiniteType::E7 => 2_903_040,
            FiniteType::E8 => 696_729_600,
            FiniteType::F4 => 1_152,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14_400,
            FiniteType::I2(m) => 2 * m as u128,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub irreducible_components: Vec<GenSet>,
    pub is_graph_join: bool,
}

impl DefiningGraph {
    /// Builds a graph from names and finite-label edges, validating labels.
    pub fn new(names: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_GENERATORS {
            return Err(Error::Invalid(format!("at most {MAX_GENERATORS} generators")));
        }
        let mut seen = HashMap::new();
        for name in &names {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut labels = vec![vec![None; n]; n];
        for &(i, j, m) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Invalid(format!("bad edge ({i},{j})")));
            }
            if m < 2 {
                return Err(Error::LabelTooSmall {
                    a: names[i].clone(),
                    b: names[j].clone(),
                    label: m as i64,
                });
            }
            if let Some(prev) = labels[i][j] {
                if prev != m {
                    return Err(Error::AsymmetricLabel {
                        a: names[i].clone(),
                        b: names[j].clone(),
                        first: prev,
                        second: m,
                    });
                }
            }
            labels[i][j] = Some(m);
            labels[j][i] = Some(m);
        }
        Ok(Self { names, labels })
    }

    /// Parses the edge-list grammar: `a b m` per edge, `a` for an isolated
    /// vertex, `#` comments. Lines may also be separated by `;`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut declared_alone: HashMap<String, ()> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for stmt in line.split(';') {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                let err = |msg: String| Error::Parse { line: lineno + 1, msg };
                match toks.as_slice() {
                    [] => {}
                    [v] => {
                        check_name(v).map_err(err)?;
                        if declared_alone.insert(v.to_string(), ()).is_some() {
                            return Err(Error::DuplicateVertex(v.to_string()));
                        }
                        intern(v, &mut names);
                    }
                    [a, b, m] => {
                        check_name(a).map_err(err)?;
                        check_name(b).map_err(err)?;
                        if a == b {
                            return Err(err(format!("self-loop on `{a}`")));
                        }
                        if m.eq_ignore_ascii_case("inf") || *m == "∞" {
                            return Err(err("label `inf` is not allowed; omit the edge instead".into()));
                        }
                        let label: i64 = m
                            .parse()
                            .map_err(|_| err(format!("label `{m}` is not an integer")))?;
                        if label < 2 {
                            return Err(Error::LabelTooSmall {
                                a: a.to_string(),
                                b: b.to_string(),
                                label,
                            });
                        }
                        let label = u32::try_from(label).map_err(|_| err("label too large".into()))?;
                        let i = intern(a, &mut names);
                        let j = intern(b, &mut names);
                        edges.push((i, j, label));
                    }
                    _ => return Err(err(format!("expected `a b label` or `a`, got `{}`", stmt.trim()))),
                }
            }
        }
        Self::new(names, &edges)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Self::new(json.vertices.clone(), &json.edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self.edges(),
        }
    }

    /// Renders the text grammar; `parse(to_text())` reproduces the graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("{name}\n"));
        }
        for (i, j, m) in self.edges() {
            out.push_str(&format!("{} {} {}\n", self.names[i], self.names[j], m));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.len())
    }

    /// Label m_ij; `None` is ∞ (and the diagonal).
    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i][j]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.labels[i][j].is_some()
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        self.labels[i][j] == Some(2)
    }

    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if let Some(m) = self.labels[i][j] {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    /// Parses `{a,b}` or `a,b` or `a b` into a generator set.
    pub fn parse_set(&self, text: &str) -> Result<GenSet> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = GenSet::EMPTY;
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            set = set.with(self.index_of(tok)?);
        }
        Ok(set)
    }

    pub fn format_set(&self, set: GenSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, set: GenSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    fn check_subset(&self, t: GenSet) -> Result<()> {
        if t.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::NotASubset)
        }
    }

    pub fn is_clique(&self, t: GenSet) -> bool {
        let v: Vec<usize> = t.iter().collect();
        v.iter()
            .enumerate()
            .all(|(k, &i)| v[k + 1..].iter().all(|&j| self.adjacent(i, j)))
    }

    /// The ring holding `2cos(π/m)` for every label of this graph.
    pub fn ring(&self) -> CyclotomicRing {
        CyclotomicRing::for_labels(self.edges().into_iter().map(|(_, _, m)| m))
    }

    /// `2·B(α_i, α_j) = -2cos(π/m_ij)`, with 2 on the diagonal and -2 for ∞.
    pub fn bilinear_form(&self, ring: &CyclotomicRing) -> Vec<Vec<Cyc>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            ring.from_int(2)
                        } else {
                            ring.neg(&ring.two_cos_pi_over(self.labels[i][j].unwrap_or(0)))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Positive definiteness of the cosine matrix restricted to `t`, decided
    /// by Sylvester's criterion with exact minors.
    fn cosine_matrix_positive_definite(&self, t: GenSet) -> bool {
        if t.is_empty() {
            return true;
        }
        if t.iter().any(|i| t.iter().any(|j| i != j && self.labels[i][j].is_none())) {
            // A ∞ label gives a 2x2 principal minor 4 - 4 = 0.
            return false;
        }
        let ring = self.ring();
        let form = self.bilinear_form(&ring);
        let idx: Vec<usize> = t.iter().collect();
        let k = idx.len();
        let mat: Vec<Vec<Cyc>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| form[i][j].clone()).collect())
            .collect();
        let minors = leading_row_minors(&ring, &mat);
        (1..=k).all(|size| ring.sign(&minors[(1usize << size) - 1]) > 0)
    }

    pub fn is_finite_type(&self, t: GenSet) -> Result<bool> {
        self.check_subset(t)?;
        Ok(self.cosine_matrix_positive_definite(t))
    }

    /// All spherical subsets including ∅, sorted by size then bitmask.
    pub fn spherical_subsets(&self) -> Vec<GenSet> {
        let mut spherical: BTreeMap<GenSet, bool> = BTreeMap::new();
        let mut out = Vec::new();
        let mut all: Vec<GenSet> = self.all().subsets().collect();
        all.sort_by_key(|s| (s.len(), s.0));
        for t in all {
            let faces_ok = t.iter().all(|i| spherical.get(&t.without(i)).copied().unwrap_or(false));
            let ok = (t.is_empty() || faces_ok) && self.cosine_matrix_positive_definite(t);
            spherical.insert(t, ok);
            if ok {
                out.push(t);
            }
        }
        out
    }

    pub fn is_fc_type(&self) -> bool {
        self.all()
            .subsets()
            .filter(|&t| self.is_clique(t))
            .all(|t| self.cosine_matrix_positive_definite(t))
    }

    /// Irreducible components (cross labels all 2) and the label-blind join test.
    pub fn decompose(&self, t: GenSet) -> Result<Decomposition> {
        self.check_subset(t)?;
        let irreducible_components = components(t, |i, j| !self.commute(i, j));
        let is_graph_join = t.len() >= 2 && components(t, |i, j| !self.adjacent(i, j)).len() >= 2;
        Ok(Decomposition {
            irreducible_components,
            is_graph_join,
        })
    }

    /// Connectivity of Γ itself (edges are the finite labels).
    pub fn is_connected(&self) -> bool {
        components(self.all(), |i, j| self.adjacent(i, j)).len() <= 1
    }

    pub fn is_irreducible(&self, t: GenSet) -> bool {
        components(t, |i, j| !self.commute(i, j)).len() <= 1
    }

    pub fn classify(&self, t: GenSet) -> Result<SubsetClass> {
        let finite = self.is_finite_type(t)?;
        let comps = components(t, |i, j| !self.commute(i, j));
        let coxeter_order = if finite {
            comps
                .iter()
                .map(|&c| self.recognize_finite_type(c).map(FiniteType::order))
                .try_fold(1u128, |acc, o| o.map(|o| acc * o))
        } else {
            None
        };
        Ok(SubsetClass {
            subset: t,
            kind: if finite { SubsetKind::FiniteType } else { SubsetKind::InfiniteType },
            irreducible: comps.len() <= 1,
            coxeter_order,
        })
    }

    /// Recognizes an irreducible finite Coxeter diagram on `t` by shape.
    pub fn recognize_finite_type(&self, t: GenSet) -> Option<FiniteType> {
        let v: Vec<usize> = t.iter().collect();
        let n = v.len();
        if n == 0 {
            return None;
        }
        let mut deg = vec![0usize; n];
        let mut diagram: Vec<(usize, usize, u32)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                match self.labels[v[a]][v[b]] {
                    None => return None,
                    Some(2) => {}
                    Some(m) => {
                        deg[a] += 1;
                        deg[b] += 1;
                        diagram.push((a, b, m));
                    }
                }
            }
        }
        if diagram.len() != n - 1 || components(GenSet::full(n), |a, b| {
            diagram.iter().any(|&(x, y, _)| (x, y) == (a.min(b), a.max(b)))
        })
        .len()
            != 1
        {
            return None;
        }
        match n {
            1 => return Some(FiniteType::A(1)),
            2 => {
                let m = diagram[0].2;
                return Some(if m == 3 { FiniteType::A(2) } else if m == 4 { FiniteType::B(2) } else { FiniteType::I2(m) });
            }
            _ => {}
        }
        let big: Vec<&(usize, usize, u32)> = diagram.iter().filter(|e| e.2 > 3).collect();
        let max_deg = *deg.iter().max().unwrap();
        if max_deg > 3 || big.len() > 1 {
            return None;
        }
        if max_deg == 3 {
            if !big.is_empty() {
                return None;
            }
            let center = deg.iter().position(|&d| d == 3).unwrap();
            if deg.iter().filter(|&&d| d == 3).count() > 1 {
                return None;
            }
            let mut arms: Vec<usize> = diagram
                .iter()
                .filter_map(|&(a, b, _)| {
                    if a == center {
                        Some(b)
                    } else if b == center {
                        Some(a)
                    } else {
                        None
                    }
                })
                .map(|start| arm_length(&diagram, center, start))
                .collect();
            arms.sort();
            return match arms.as_slice() {
                [1, 1, k] => Some(FiniteType::D(k + 3)),
                [1, 2, 2] => Some(FiniteType::E6),
                [1, 2, 3] => Some(FiniteType::E7),
                [1, 2, 4] => Some(FiniteType::E8),
                _ => None,
            };
        }
        // A path.
        let Some(&&(a, b, m)) = big.first() else {
            return Some(FiniteType::A(n));
        };
        let at_end = deg[a] == 1 || deg[b] == 1;
        match (m, n, at_end) {
            (4, _, true) => Some(FiniteType::B(n)),
            (4, 4, false) => Some(FiniteType::F4),
            (5, 3, true) => Some(FiniteType::H3),
            (5, 4, true) => Some(FiniteType::H4),
            _ => None,
        }
    }
}

fn arm_length(diagram: &[(usize, usize, u32)], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = diagram.iter().find_map(|&(a, b, _)| {
            if a == cur && b != prev {
                Some(b)
            } else if b == cur && a != prev {
                Some(a)
            } else {
                None
            }
        });
        match next {
            Some(nx) => {
                prev = cur;
                cur = nx;
                len += 1;
            }
            None => return len,
        }
    }
}

fn check_name(v: &str) -> std::result::Result<(), String> {
    if v == "e" {
        return Err("`e` is reserved for the identity".into());
    }
    if v.chars().any(|c| matches!(c, '^' | '{' | '}' | ',' | '|' | '[' | ']' | ';' | '(' | ')')) {
        return Err(format!("invalid generator name `{v}`"));
    }
    Ok(())
}

/// Connected components of `t` under the relation `linked`.
pub(crate) fn components(t: GenSet, linked: impl Fn(usize, usize) -> bool) -> Vec<GenSet> {
    let mut left = t;
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in left.iter() {
                if !comp.contains(j) && linked(i, j) {
                    comp = comp.with(j);
                    stack.push(j);
                }
            }
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

/// `out[mask]` is the determinant of rows `0..|mask|` and columns `mask`.
fn leading_row_minors(ring: &CyclotomicRing, mat: &[Vec<Cyc>]) -> Vec<Cyc> {
    let k = mat.len();
    let mut out = vec![ring.zero(); 1 << k];
    out[0] = ring.from_int(1);
    let mut masks: Vec<usize> = (1..1usize << k).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = ring.zero();
        let mut pos = 0usize;
        for c in 0..k {
            if mask >> c & 1 == 0 {
                continue;
            }
            let entry = &mat[row][c];
            if !entry.is_zero() {
                let term = ring.mul(entry, &out[mask & !(1 << c)]);
                // Laplace along the last row: sign (-1)^(row + pos).
                acc = if (row + pos).is_multiple_of(2) { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            pos += 1;
        }
        out[mask] = acc;
    }
    out
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
