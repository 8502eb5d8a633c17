//! The complex of irreducible spherical parabolic subgroups, explored through
//! its fundamental domain and bounded balls.
//!
//! Edges are decided by commuting central elements. Ball neighbors of `P` are
//! searched among `g_P h A_Y h^{-1} g_P^{-1}` with `|h|` bounded, so distances
//! are upper bounds relative to the ball.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use serde_json::json;

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::par;
use crate::parabolic::{AdjacencyKind, Parabolic, ParabolicCalculus};
use crate::word::{reduced_words_up_to, Word};

/// Γ connected with at least three vertices.
pub fn connectivity_criterion(graph: &DefiningGraph) -> bool {
    graph.len() >= 3 && graph.is_connected()
}

#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    pub vertices: Vec<GenSet>,
    /// Condition tag from a standard witness at `h = ε`, when one exists.
    pub edges: Vec<(usize, usize, Option<AdjacencyKind>)>,
    pub components: usize,
    pub connected: bool,
    pub criterion: bool,
}

impl FundamentalDomain {
    pub fn agrees(&self) -> bool {
        self.connected == self.criterion
    }

    fn index(&self, x: GenSet) -> Option<usize> {
        self.vertices.iter().position(|&v| v == x)
    }

    /// Shortest path between standard vertices, endpoints included.
    pub fn path(&self, from: GenSet, to: GenSet) -> Option<Vec<GenSet>> {
        let (a, b) = (self.index(from)?, self.index(to)?);
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &(x, y, _) in &self.edges {
                let w = if x == v {
                    y
                } else if y == v {
                    x
                } else {
                    continue;
                };
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[b] == usize::MAX {
            return None;
        }
        let mut path = vec![b];
        while *path.last().unwrap() != a {
            path.push(prev[*path.last().unwrap()]);
        }
        Some(path.into_iter().rev().map(|i| self.vertices[i]).collect())
    }

    pub fn to_dot(&self, graph: &DefiningGraph) -> String {
        let mut out = String::from("graph cp_domain {\n");
        for (i, &x) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"A{}\"];\n", graph.format_set(x)));
        }
        for &(a, b, kind) in &self.edges {
            let tag = kind.map_or("z-commute".to_string(), |k| k.to_string());
            out.push_str(&format!("  v{a} -- v{b} [condition=\"{tag}\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, graph: &DefiningGraph) -> serde_json::Value {
        json!({
            "vertices": self.vertices.iter().map(|&x| graph.set_names(x)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, b, k)| json!({"a": a, "b": b, "condition": k})).collect::<Vec<_>>(),
            "components": self.components,
            "connected": self.connected,
            "criterion": self.criterion,
            "agrees": self.agrees(),
        })
    }
}

/// Standard proper irreducible spherical parabolics and the edges among them.
pub fn cp_fundamental_domain(pc: &ParabolicCalculus) -> Result<FundamentalDomain> {
    let graph = pc.graph();
    if !graph.is_irreducible(graph.all()) {
        return Err(Error::WrongGraphClass("reducible; use the join check"));
    }
    let vertices = pc.standard_vertices();
    let parabolics = vertices.iter().map(|&x| pc.standard(x)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let adj = pc.is_adjacent(&parabolics[i], &parabolics[j], 0)?;
            if adj.adjacent() {
                edges.push((i, j, adj.witness.map(|w| w.kind)));
            }
        }
    }
    let components = count_components(vertices.len(), &edges);
    Ok(FundamentalDomain {
        connected: components <= 1,
        components,
        criterion: connectivity_criterion(graph),
        vertices,
        edges,
    })
}

fn count_components(n: usize, edges: &[(usize, usize, Option<AdjacencyKind>)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    for &(a, b, _) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count()
}

/// Connectivity of CP: the fundamental domain for irreducible graphs, the
/// join check for reducible ones. Returns `(connected, expected)`.
pub fn connectivity_verdict(pc: &ParabolicCalculus) -> Result<(bool, bool)> {
    let graph = pc.graph();
    if graph.is_irreducible(graph.all()) {
        let d = cp_fundamental_domain(pc)?;
        Ok((d.connected, d.criterion))
    } else {
        let j = check_join(pc, 1)?;
        Ok((j.diameter.is_some(), true))
    }
}

#[derive(Clone, Debug)]
pub struct PathReplay {
    pub path: Vec<Parabolic>,
    /// Consecutive pairs failing the commuting-centers test.
    pub failures: Vec<usize>,
}

/// Path from `A_Y` to `g A_X g^{-1}`: domain paths between the singletons of
/// consecutive letters of `g`, each translated by the prefix read so far.
pub fn replay_domain_path(
    pc: &ParabolicCalculus,
    domain: &FundamentalDomain,
    g: &Word,
    x: GenSet,
    y: GenSet,
) -> Result<PathReplay> {
    let mut stops: Vec<GenSet> = vec![y];
    stops.extend(g.letters().iter().map(|l| GenSet::singleton(l.gen)));
    stops.push(x);
    let unreachable = || Error::Invalid("fundamental domain is disconnected".into());
    let mut path: Vec<Parabolic> = Vec::new();
    for (i, pair) in stops.windows(2).enumerate() {
        let prefix = Word(g.letters()[..i].to_vec());
        for z in domain.path(pair[0], pair[1]).ok_or_else(unreachable)? {
            let p = pc.make(&prefix, z)?;
            if path.last() != Some(&p) {
                path.push(p);
            }
        }
    }
    let failures = path
        .windows(2)
        .enumerate()
        .filter(|(_, w)| !pc.centers_commute(&w[0], &w[1]))
        .map(|(i, _)| i)
        .collect();
    Ok(PathReplay { path, failures })
}

#[derive(Clone, Debug)]
pub struct CpBall {
    pub radius: usize,
    pub conjugator_bound: usize,
    pub vertices: Vec<Parabolic>,
    pub distance: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    index: HashMap<String, usize>,
}

pub fn cp_ball(pc: &ParabolicCalculus, base: &Parabolic, radius: usize, conjugator_bound: usize) -> Result<CpBall> {
    pc.check_vertex(base)?;
    let words = reduced_words_up_to(pc.graph().all(), conjugator_bound);
    let targets = pc.standard_vertices();
    let candidates: Vec<(&Word, GenSet)> = words.iter().flat_map(|h| targets.iter().map(move |&y| (h, y))).collect();

    let mut ball = CpBall {
        radius,
        conjugator_bound,
        vertices: vec![base.clone()],
        distance: vec![0],
        edges: Vec::new(),
        index: HashMap::default(),
    };
    ball.index.insert(base.key().to_string(), 0);
    let mut edge_set = HashSet::default();
    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let mut next = Vec::new();
        for v in frontier {
            let p = ball.vertices[v].clone();
            let mut found = par::filter_map(&candidates, |&(h, y)| {
                let q = pc.make(&p.conjugator().concat(h), y).expect("spherical target");
                (q != p && pc.centers_commute(&p, &q)).then_some(q)
            });
            found.sort_by(|a, b| a.key().cmp(b.key()));
            found.dedup();
            for q in found {
                let w = match ball.index.get(q.key()) {
                    Some(&w) => w,
                    None => {
                        let w = ball.vertices.len();
                        ball.index.insert(q.key().to_string(), w);
                        ball.vertices.push(q);
                        ball.distance.push(d);
                        next.push(w);
                        w
                    }
                };
                let e = (v.min(w), v.max(w));
                if edge_set.insert(e) {
                    ball.edges.push(e);
                }
            }
        }
        frontier = next;
    }
    Ok(ball)
}

impl CpBall {
    pub fn base(&self) -> &Parabolic {
        &self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, p: &Parabolic) -> Option<usize> {
        self.index.get(p.key()).copied()
    }

    /// Neighbors of the base found by the search.
    pub fn base_degree(&self) -> usize {
        self.edges.iter().filter(|e| e.0 == 0 || e.1 == 0).count()
    }

    /// Distance inside the ball graph; an upper bound on the distance in CP.
    pub fn distance_between(&self, p: &Parabolic, q: &Parabolic) -> Option<usize> {
        let (a, b) = (self.index_of(p)?, self.index_of(q)?);
        bfs(self.len(), &self.edges, a)[b]
    }

    pub fn to_dot(&self, pc: &ParabolicCalculus) -> String {
        let mut out = String::from("graph cp_ball {\n");
        for (i, p) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{}\", key=\"{}\"];\n", pc.display(p), p.key()));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  v{a} -- v{b} [condition=\"z-commute\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, pc: &ParabolicCalculus) -> serde_json::Value {
        json!({
            "radius": self.radius,
            "conjugator_bound": self.conjugator_bound,
            "base": self.base().key(),
            "vertices": self.vertices.iter().zip(&self.distance).map(|(p, d)| {
                let mut v = pc.to_json(p);
                v["distance"] = json!(d);
                v
            }).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }
}

fn bfs(n: usize, edges: &[(usize, usize)], source: usize) -> Vec<Option<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[derive(Clone, Debug)]
pub struct JoinReport {
    pub vertices: Vec<Parabolic>,
    /// Irreducible component of `S` holding each vertex's standard part.
    pub factor: Vec<usize>,
    pub cross_pairs: usize,
    pub cross_failures: Vec<(usize, usize)>,
    pub same_factor_edges: usize,
    /// Diameter of the induced graph, `None` when disconnected.
    pub diameter: Option<usize>,
}

impl JoinReport {
    pub fn passed(&self) -> bool {
        self.cross_failures.is_empty() && self.diameter.is_some_and(|d| d <= 2)
    }
}

/// Conjugates `h A_Y h^{-1}` with `|h| ≤ conjugator_bound` of the standard
/// vertices: cross-factor pairs must all be adjacent and the induced graph
/// must have diameter at most 2.
pub fn check_join(pc: &ParabolicCalculus, conjugator_bound: usize) -> Result<JoinReport> {
    let graph = pc.graph();
    let components = graph.decompose(graph.all())?.irreducible_components;
    if components.len() < 2 {
        return Err(Error::WrongGraphClass("irreducible; use the fundamental domain"));
    }
    let words = reduced_words_up_to(graph.all(), conjugator_bound);
    let mut vertices: Vec<Parabolic> = Vec::new();
    let mut seen = HashMap::default();
    for h in &words {
        for y in pc.standard_vertices() {
            let p = pc.make(h, y)?;
            if seen.insert(p.key().to_string(), ()).is_none() {
                vertices.push(p);
            }
        }
    }
    let factor: Vec<usize> = vertices
        .iter()
        .map(|p| components.iter().position(|c| p.standard_part().is_subset(*c)).expect("irreducible"))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..vertices.len())
        .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
        .collect();
    let edges = par::filter_map(&pairs, |&(i, j)| pc.centers_commute(&vertices[i], &vertices[j]).then_some((i, j)));
    let cross: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| factor[i] != factor[j]).collect();
    let cross_failures = cross.iter().copied().filter(|e| !edges.contains(e)).collect();
    let same_factor_edges = edges.iter().filter(|&&(i, j)| factor[i] == factor[j]).count();
    let mut diameter = Some(0);
    for v in 0..vertices.len() {
        let d = bfs(vertices.len(), &edges, v);
        diameter = match d.iter().copied().collect::<Option<Vec<_>>>() {
            Some(ds) => diameter.map(|m| m.max(ds.into_iter().max().unwrap_or(0))),
            None => None,
        };
    }
    Ok(JoinReport {
        cross_pairs: cross.len(),
        cross_failures,
        same_factor_edges,
        diameter,
        factor,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::word::Letter;

    fn pc(name: &str) -> ParabolicCalculus {
        ParabolicCalculus::new(&catalog::get(name).unwrap()).unwrap()
    }

    #[test]
    fn path_domain_is_connected() {
        let pc = pc("path3");
        let d = cp_fundamental_domain(&pc).unwrap();
        assert_eq!(d.vertices.len(), 5);
        assert!(d.connected && d.criterion);
        let g = pc.graph();
        let (s, u) = (g.parse_set("{s}").unwrap(), g.parse_set("{u}").unwrap());
        let kind = d
            .edges
            .iter()
            .find(|&&(a, b, _)| d.vertices[a] == s && d.vertices[b] == u || d.vertices[a] == u && d.vertices[b] == s);
        assert!(kind.is_none(), "s and u do not commute");
    }

    #[test]
    fn small_graphs_are_disconnected() {
        for name in ["dihedral3", "f2"] {
            let d = cp_fundamental_domain(&pc(name)).unwrap();
            assert_eq!(d.vertices.len(), 2);
            assert!(d.edges.is_empty());
            assert!(!d.connected && !d.criterion);
        }
        assert!(cp_fundamental_domain(&pc("edge2")).is_err());
    }

    #[test]
    fn domain_path_replays() {
        let pc = pc("cycle5");
        let d = cp_fundamental_domain(&pc).unwrap();
        let g = Word(vec![Letter::pos(0), Letter::neg(2), Letter::pos(4)]);
        let r = replay_domain_path(&pc, &d, &g, GenSet::from_indices([1, 2]), GenSet::singleton(3)).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.path[0], pc.standard(GenSet::singleton(3)).unwrap());
        assert_eq!(*r.path.last().unwrap(), pc.make(&g, GenSet::from_indices([1, 2])).unwrap());
    }

    #[test]
    fn ball_around_rank_two() {
        let pc = pc("path3");
        let base = pc.standard(GenSet::from_indices([0, 1])).unwrap();
        assert_eq!(cp_ball(&pc, &base, 0, 2).unwrap().len(), 1);
        let ball = cp_ball(&pc, &base, 1, 1).unwrap();
        for (h, y) in [(vec![], 0), (vec![], 1), (vec![1], 0), (vec![0], 1)] {
            let q = pc.make(&Word::from_gens(&h), GenSet::singleton(y)).unwrap();
            assert_eq!(ball.distance_between(&base, &q), Some(1));
        }
        for &(a, b) in &ball.edges {
            assert!(pc.is_adjacent(&ball.vertices[a], &ball.vertices[b], 0).unwrap().adjacent());
        }
        let degrees: Vec<usize> = (1..=3).map(|cb| cp_ball(&pc, &base, 1, cb).unwrap().base_degree()).collect();
        assert!(degrees[0] < degrees[1] && degrees[1] < degrees[2], "{degrees:?}");
    }

    #[test]
    fn joins_have_diameter_two() {
        let r = check_join(&pc("edge2"), 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.diameter, Some(1));
        let r = check_join(&pc("product"), 1).unwrap();
        assert!(r.passed(), "{:?}", r.cross_failures);
        assert_eq!(r.diameter, Some(2));
        assert!(check_join(&pc("square2"), 1).unwrap().passed());
        assert!(check_join(&pc("path3"), 1).is_err());
    }
}
