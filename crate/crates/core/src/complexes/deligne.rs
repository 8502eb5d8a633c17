//! Bounded balls in the Deligne complex: vertices are cosets `g A_T` with `T`
//! spherical, and each interval `[g A_T, g A_{T'}]` spans a cube.
//!
//! The complex is not locally finite (`A_{{s}}` sits over every `s^k A_∅`), so
//! a downward step from `g A_T` only visits `g h A_{T∖s}` for words `h` in `T`
//! of length at most `down_bound`.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fc::{FcGroup, FcWord};
use crate::genset::GenSet;
use crate::par;
use crate::parabolic::{Parabolic, ParabolicCalculus};
use crate::word::{reduced_words_up_to, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    /// Canonical element of `g A_T`.
    pub rep: FcWord,
    pub t: GenSet,
}

/// Edge `lower ⊂ upper`, dual to a hyperplane of type `kind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub lower: usize,
    pub upper: usize,
    pub kind: usize,
}

/// The cube `[bottom, top]`, of dimension `|T_top ∖ T_bottom| ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cube {
    pub bottom: usize,
    pub top: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Peak,
    Valley,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathProfile {
    pub steps: Vec<Direction>,
    /// Interior positions where the direction changes.
    pub turning_points: Vec<(usize, Turn)>,
}

impl PathProfile {
    pub fn peaks(&self) -> usize {
        self.turning_points.iter().filter(|t| t.1 == Turn::Peak).count()
    }

    pub fn valleys(&self) -> usize {
        self.turning_points.iter().filter(|t| t.1 == Turn::Valley).count()
    }
}

#[derive(Clone, Debug)]
pub struct DeligneBall {
    pub radius: usize,
    pub down_bound: usize,
    pub vertices: Vec<Coset>,
    /// Edge distance from `A_∅` found by the search.
    pub distance: Vec<usize>,
    pub edges: Vec<Edge>,
    pub cubes: Vec<Cube>,
    index: HashMap<Coset, usize>,
    edge_index: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionReport {
    pub edges_checked: usize,
    pub violations: Vec<String>,
}

pub fn deligne_ball(fc: &FcGroup, radius: usize, down_bound: usize) -> Result<DeligneBall> {
    let spherical: HashSet<GenSet> = fc.graph().spherical_subsets().into_iter().collect();
    let start = Coset {
        rep: fc.identity(),
        t: GenSet::EMPTY,
    };
    let mut vertices = vec![start.clone()];
    let mut distance = vec![0];
    let mut index: HashMap<Coset, usize> = HashMap::default();
    index.insert(start, 0);
    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let cosets: Vec<Coset> = frontier.iter().map(|&i| vertices[i].clone()).collect();
        let found = par::map(&cosets, |c| neighbors(fc, &spherical, c, down_bound));
        let mut next = Vec::new();
        for n in found.into_iter().flatten() {
            if !index.contains_key(&n) {
                index.insert(n.clone(), vertices.len());
                next.push(vertices.len());
                vertices.push(n);
                distance.push(d);
            }
        }
        frontier = next;
    }

    let ups = par::map(&vertices, |c| up_neighbors(fc, &spherical, c));
    let mut edges = Vec::new();
    let mut edge_index = HashMap::default();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (lower, list) in ups.into_iter().enumerate() {
        for (kind, c) in list {
            if let Some(&upper) = index.get(&c) {
                edge_index.insert((lower, upper), edges.len());
                edges.push(Edge { lower, upper, kind });
                adjacency[lower].push(upper);
                adjacency[upper].push(lower);
            }
        }
    }

    let mut ball = DeligneBall {
        radius,
        down_bound,
        vertices,
        distance,
        edges,
        cubes: Vec::new(),
        index,
        edge_index,
        adjacency,
    };
    let tops: Vec<GenSet> = spherical.iter().copied().collect();
    let cubes = par::map(&ball.vertices, |c| {
        tops.iter()
            .filter(|&&top| c.t.is_subset(top) && top != c.t)
            .filter_map(|&top| {
                let faces = top.difference(c.t).subsets().map(|u| c.t.union(u));
                let all_in = faces
                    .map(|u| ball.find(fc, &c.rep, u))
                    .collect::<Option<Vec<_>>>()?;
                Some(all_in[all_in.len() - 1])
            })
            .collect::<Vec<_>>()
    });
    for (bottom, list) in cubes.into_iter().enumerate() {
        for top in list {
            ball.cubes.push(Cube { bottom, top });
        }
    }
    ball.cubes.sort_by_key(|c| (c.bottom, c.top));
    Ok(ball)
}

fn up_neighbors(fc: &FcGroup, spherical: &HashSet<GenSet>, c: &Coset) -> Vec<(usize, Coset)> {
    fc.graph()
        .all()
        .difference(c.t)
        .iter()
        .filter(|&s| spherical.contains(&c.t.with(s)))
        .map(|s| {
            let t = c.t.with(s);
            (s, Coset { rep: fc.left_coset_rep(&c.rep, t), t })
        })
        .collect()
}

fn neighbors(fc: &FcGroup, spherical: &HashSet<GenSet>, c: &Coset, down_bound: usize) -> Vec<Coset> {
    let mut out: Vec<Coset> = up_neighbors(fc, spherical, c).into_iter().map(|x| x.1).collect();
    let hs = reduced_words_up_to(c.t, down_bound);
    for s in c.t.iter() {
        let t = c.t.without(s);
        for h in &hs {
            let g = fc.normal_form(&c.rep.word().concat(h)).expect("letters of the ambient group");
            out.push(Coset { rep: fc.left_coset_rep(&g, t), t });
        }
    }
    out.sort();
    out.dedup();
    out
}

impl DeligneBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, c: &Coset) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Index of `g A_T`, for any element `g` of the coset.
    pub fn find(&self, fc: &FcGroup, g: &FcWord, t: GenSet) -> Option<usize> {
        self.index_of(&Coset {
            rep: fc.left_coset_rep(g, t),
            t,
        })
    }

    pub fn find_word(&self, fc: &FcGroup, g: &Word, t: GenSet) -> Result<Option<usize>> {
        Ok(self.find(fc, &fc.normal_form(g)?, t))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<&Edge> {
        self.edge_index
            .get(&(a, b))
            .or_else(|| self.edge_index.get(&(b, a)))
            .map(|&i| &self.edges[i])
    }

    pub fn cube_dimension(&self, c: &Cube) -> usize {
        self.vertices[c.top].t.difference(self.vertices[c.bottom].t).len()
    }

    pub fn hyperplane_type(&self, a: usize, b: usize) -> Result<usize> {
        self.edge(a, b)
            .map(|e| e.kind)
            .ok_or_else(|| Error::Invalid(format!("no edge between vertices {a} and {b}")))
    }

    /// Types of the hyperplanes crossed by a vertex path, with the step index.
    pub fn crossing_hyperplanes(&self, path: &[usize]) -> Result<Vec<(usize, usize)>> {
        path.windows(2)
            .enumerate()
            .map(|(i, w)| Ok((self.hyperplane_type(w[0], w[1])?, i)))
            .collect()
    }

    pub fn edge_path_profile(&self, path: &[usize]) -> Result<PathProfile> {
        let mut steps = Vec::new();
        for w in path.windows(2) {
            let e = self
                .edge(w[0], w[1])
                .ok_or_else(|| Error::Invalid(format!("vertices {} and {} are not joined", w[0], w[1])))?;
            steps.push(if e.lower == w[0] { Direction::Up } else { Direction::Down });
        }
        let turning_points = steps
            .windows(2)
            .enumerate()
            .filter_map(|(i, d)| match (d[0], d[1]) {
                (Direction::Up, Direction::Down) => Some((i + 1, Turn::Peak)),
                (Direction::Down, Direction::Up) => Some((i + 1, Turn::Valley)),
                _ => None,
            })
            .collect();
        Ok(PathProfile { steps, turning_points })
    }

    /// Cubes whose crossing types are not a clique of Γ, or whose parallel
    /// edges disagree on type.
    pub fn cube_type_violations(&self, fc: &FcGroup) -> Vec<String> {
        let graph = fc.graph();
        let mut bad = Vec::new();
        for c in &self.cubes {
            let (b, top) = (&self.vertices[c.bottom], &self.vertices[c.top]);
            let types = top.t.difference(b.t);
            if !graph.is_clique(types) {
                bad.push(format!("cube {}..{}: types {} not a clique", c.bottom, c.top, graph.format_set(types)));
            }
            for u in types.subsets() {
                let lo = self.find(fc, &b.rep, b.t.union(u));
                for s in types.difference(u).iter() {
                    let hi = self.find(fc, &b.rep, b.t.union(u).with(s));
                    match (lo, hi) {
                        (Some(x), Some(y)) if self.edge(x, y).map(|e| e.kind) == Some(s) => {}
                        _ => bad.push(format!("cube {}..{}: edge of type {} missing", c.bottom, c.top, graph.name(s))),
                    }
                }
            }
        }
        bad
    }

    /// Translates every edge by `h`; where both image vertices are in the ball
    /// they must be joined by an edge of the same type.
    pub fn action_report(&self, fc: &FcGroup, h: &Word) -> ActionReport {
        let image = |v: usize| {
            let c = &self.vertices[v];
            let g = fc.normal_form(&h.concat(c.rep.word())).expect("letters of the ambient group");
            self.find(fc, &g, c.t)
        };
        let images: Vec<Option<usize>> = (0..self.len()).map(image).collect();
        let mut report = ActionReport::default();
        for e in &self.edges {
            if let (Some(a), Some(b)) = (images[e.lower], images[e.upper]) {
                report.edges_checked += 1;
                match self.edge(a, b) {
                    Some(f) if f.lower == a && f.kind == e.kind => {}
                    _ => report.violations.push(format!("edge {}-{} not mapped to an edge", e.lower, e.upper)),
                }
            }
        }
        report
    }

    /// Vertices `g A_T` with `P ⊆ g A_T g^{-1}`.
    pub fn fixed_set(&self, pc: &ParabolicCalculus, p: &Parabolic) -> Result<Vec<usize>> {
        if p.standard_part() == pc.graph().all() {
            return Err(Error::InvalidParabolic("proper"));
        }
        let fc = pc.fc();
        let gens = pc.generators(p);
        let fixed = par::filter_map(&(0..self.len()).collect::<Vec<_>>(), |&v| {
            let c = &self.vertices[v];
            let g = c.rep.word();
            gens.iter()
                .all(|x| {
                    let y = fc.normal_form(&g.inverse().concat(x).concat(g)).expect("ambient letters");
                    fc.member(&y, c.t).expect("subset of S")
                })
                .then_some(v)
        });
        Ok(fixed)
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices on some minimal-length edge path from `a` to `b` inside the ball.
    pub fn geodesic_interval(&self, a: usize, b: usize) -> Vec<usize> {
        let (da, db) = (self.distances_from(a), self.distances_from(b));
        let Some(total) = da[b] else { return Vec::new() };
        (0..self.len())
            .filter(|&v| matches!((da[v], db[v]), (Some(x), Some(y)) if x + y == total))
            .collect()
    }

    /// Pairs of fixed vertices with a minimal path leaving the fixed set.
    pub fn geodesic_closure_violations(&self, fixed: &[usize], pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let set: HashSet<usize> = fixed.iter().copied().collect();
        pairs
            .iter()
            .copied()
            .filter(|&(a, b)| self.geodesic_interval(a, b).iter().any(|v| !set.contains(v)))
            .collect()
    }

    pub fn vertex_key(&self, fc: &FcGroup, v: usize) -> String {
        let c = &self.vertices[v];
        format!("{}{}", fc.serialize(&c.rep), fc.graph().format_set(c.t))
    }

    pub fn vertex_label(&self, fc: &FcGroup, v: usize) -> String {
        let c = &self.vertices[v];
        let g = fc.graph();
        format!("{} A{}", c.rep.word().render(g), g.format_set(c.t))
    }

    pub fn to_dot(&self, fc: &FcGroup) -> String {
        let g = fc.graph();
        let mut out = String::from("graph deligne {\n");
        for v in 0..self.len() {
            out.push_str(&format!(
                "  v{v} [label=\"{}\", key=\"{}\"];\n",
                self.vertex_label(fc, v),
                self.vertex_key(fc, v)
            ));
        }
        for e in &self.edges {
            out.push_str(&format!("  v{} -- v{} [type=\"{}\"];\n", e.lower, e.upper, g.name(e.kind)));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, fc: &FcGroup) -> serde_json::Value {
        let g = fc.graph();
        json!({
            "radius": self.radius,
            "down_bound": self.down_bound,
            "vertices": (0..self.len()).map(|v| json!({
                "key": self.vertex_key(fc, v),
                "rep": self.vertices[v].rep.word().render(g),
                "t": g.set_names(self.vertices[v].t),
                "distance": self.distance[v],
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "lower": e.lower, "upper": e.upper, "type": g.name(e.kind),
            })).collect::<Vec<_>>(),
            "cubes": self.cubes.iter().map(|c| json!({
                "bottom": c.bottom, "top": c.top, "dimension": self.cube_dimension(c),
            })).collect::<Vec<_>>(),
        })
    }
}
