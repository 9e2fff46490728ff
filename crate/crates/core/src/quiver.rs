//! Quivers, separated quivers and Dynkin/Euclidean classification of the
//! underlying multigraph.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::QuiverError;
use crate::field::FieldDescriptor;
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Paths compose left to right: in `ab`, `t(a) = s(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, QuiverError> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |v: &str| vindex.get(v).copied().ok_or_else(|| QuiverError::UnknownVertex(v.to_string()));
        let mut out = Vec::with_capacity(arrows.len());
        for (l, s, t) in arrows {
            out.push(Arrow { label: l.as_ref().to_string(), source: lookup(s.as_ref())?, target: lookup(t.as_ref())? });
        }
        Quiver::from_arrows(vertices, out)
    }

    pub fn from_arrows(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() {
                return Err(QuiverError::UnknownVertex(a.source.to_string()));
            }
            if a.target >= vertices.len() {
                return Err(QuiverError::UnknownVertex(a.target.to_string()));
            }
            if arrow_index.insert(a.label.clone(), i).is_some() {
                return Err(QuiverError::DuplicateArrow(a.label.clone()));
            }
        }
        Ok(Quiver { vertices, arrows, arrow_index })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrow_index.get(label).copied()
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.arrows[i].source == self.arrows[i].target
    }

    /// Connected components of the underlying graph, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x] = y;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// Arrows whose endpoints both lie in `vertices`.
    pub fn arrows_within(&self, vertices: &[usize]) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| vertices.contains(&self.arrows[i].source) && vertices.contains(&self.arrows[i].target))
            .collect()
    }

    /// Same quiver with the arrows listed in a different order.
    pub fn with_arrow_order(&self, order: &[usize]) -> Quiver {
        let arrows = order.iter().map(|&i| self.arrows[i].clone()).collect();
        Quiver::from_arrows(self.vertices.clone(), arrows).expect("permutation of a valid quiver")
    }

    fn topological_order(&self) -> Result<Vec<usize>, QuiverError> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        if order.len() < n {
            let v = (0..n).find(|&v| indeg[v] > 0).expect("vertex on a cycle");
            return Err(QuiverError::NotAcyclic(self.vertices[v].clone()));
        }
        Ok(order)
    }
}

/// `Q^s`: vertices `v` and `v'`, and an arrow `s(a) -> t(a)'` for every arrow `a`.
pub fn separated_quiver(q: &Quiver) -> Quiver {
    let n = q.vertex_count();
    let mut vertices: Vec<String> = q.vertices().to_vec();
    vertices.extend(q.vertices().iter().map(|v| format!("{v}'")));
    let arrows = q
        .arrows()
        .iter()
        .map(|a| Arrow { label: format!("{}s", a.label), source: a.source, target: n + a.target })
        .collect();
    Quiver::from_arrows(vertices, arrows).expect("separated quiver is well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphType {
    Dynkin,
    Euclidean,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub vertices: Vec<String>,
    pub verdict: GraphType,
    /// Catalogue name such as `A3`, `D5`, `~A1`, `~E6`; absent for `Neither`.
    pub name: Option<String>,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.verdict {
            GraphType::Dynkin => "Dynkin",
            GraphType::Euclidean => "Euclidean",
            GraphType::Neither => "neither",
        };
        match &self.name {
            Some(n) => write!(f, "{kind} {n} on {{{}}}", self.vertices.join(", ")),
            None => write!(f, "{kind} on {{{}}}", self.vertices.join(", ")),
        }
    }
}

/// Per-component classification of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub components: Vec<ComponentClass>,
}

impl GraphClass {
    pub fn contains(&self, verdict: GraphType, name: &str) -> bool {
        self.components.iter().any(|c| c.verdict == verdict && c.name.as_deref() == Some(name))
    }

    pub fn count(&self, verdict: GraphType, name: &str) -> usize {
        self.components.iter().filter(|c| c.verdict == verdict && c.name.as_deref() == Some(name)).count()
    }
}

/// Underlying multigraph of one component: symmetric edge multiplicities and
/// loop counts, indexed locally.
struct Multigraph {
    adj: Vec<Vec<usize>>,
    loops: Vec<usize>,
}

impl Multigraph {
    fn of_component(q: &Quiver, verts: &[usize]) -> Self {
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        let mut adj = vec![vec![0; n]; n];
        let mut loops = vec![0; n];
        for a in q.arrows() {
            let (Some(&s), Some(&t)) = (local.get(&a.source), local.get(&a.target)) else {
                continue;
            };
            if s == t {
                loops[s] += 1;
            } else {
                adj[s][t] += 1;
                adj[t][s] += 1;
            }
        }
        Multigraph { adj, loops }
    }

    fn len(&self) -> usize {
        self.loops.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().sum::<usize>() + 2 * self.loops[v]
    }
}

/// Verdict from the symmetric form `2·Id − Adj`: positive definite means
/// Dynkin, positive semidefinite with one-dimensional radical means Euclidean.
fn tits_verdict(g: &Multigraph) -> GraphType {
    if g.loops.iter().any(|&l| l > 0) {
        return GraphType::Neither;
    }
    let q = FieldDescriptor::Rationals;
    let n = g.len();
    let mut m = Mat::zeros(q, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { 2 } else { -(g.adj[i][j] as i64) };
            m.set(i, j, q.from_i64(v));
        }
    }
    // symmetric elimination tracking inertia
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if active.iter().any(|&i| m.get(i, i).is_negative()) {
            return GraphType::Neither;
        }
        let Some(pos) = active.iter().position(|&i| !m.get(i, i).is_zero()) else {
            // all remaining diagonal entries vanish
            let all_zero = active.iter().all(|&i| active.iter().all(|&j| m.get(i, j).is_zero()));
            if !all_zero {
                return GraphType::Neither;
            }
            return if active.len() == 1 { GraphType::Euclidean } else { GraphType::Neither };
        };
        let p = active.remove(pos);
        let piv = m.get(p, p).clone();
        for &i in &active {
            let f = m.get(i, p) / &piv;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = m.get(i, j) - &(&f * m.get(p, j));
                m.set(i, j, v);
            }
        }
    }
    GraphType::Dynkin
}

/// Arm lengths (vertex counts) hanging off `center` in a tree.
fn arm_lengths(g: &Multigraph, center: usize) -> Vec<usize> {
    let mut arms = Vec::new();
    for start in (0..g.len()).filter(|&w| g.adj[center][w] > 0) {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        loop {
            let next: Vec<usize> = (0..g.len()).filter(|&w| w != prev && g.adj[cur][w] > 0).collect();
            if next.len() != 1 {
                break;
            }
            prev = cur;
            cur = next[0];
            len += 1;
        }
        arms.push(len);
    }
    arms.sort();
    arms
}

/// Names the component by shape alone, independent of the quadratic form.
fn catalogue_match(g: &Multigraph) -> Option<(GraphType, String)> {
    let n = g.len();
    if g.loops.iter().any(|&l| l > 0) {
        return None;
    }
    if n == 1 {
        return Some((GraphType::Dynkin, "A1".into()));
    }
    let multi = (0..n).any(|i| (0..n).any(|j| g.adj[i][j] > 1));
    if multi {
        if n == 2 && g.adj[0][1] == 2 {
            return Some((GraphType::Euclidean, "~A1".into()));
        }
        return None;
    }
    let edges: usize = (0..n).map(|i| g.degree(i)).sum::<usize>() / 2;
    let degs: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    if edges == n {
        if degs.iter().all(|&d| d == 2) {
            return Some((GraphType::Euclidean, format!("~A{}", n - 1)));
        }
        return None;
    }
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&i| degs[i] >= 3).collect();
    match branch.as_slice() {
        [] => Some((GraphType::Dynkin, format!("A{n}"))),
        [c] if degs[*c] == 4 && n == 5 => Some((GraphType::Euclidean, "~D4".into())),
        [c] if degs[*c] == 3 => match arm_lengths(g, *c).as_slice() {
            [1, 1, k] => Some((GraphType::Dynkin, format!("D{}", k + 3))),
            [1, 2, 2] => Some((GraphType::Dynkin, "E6".into())),
            [1, 2, 3] => Some((GraphType::Dynkin, "E7".into())),
            [1, 2, 4] => Some((GraphType::Dynkin, "E8".into())),
            [2, 2, 2] => Some((GraphType::Euclidean, "~E6".into())),
            [1, 3, 3] => Some((GraphType::Euclidean, "~E7".into())),
            [1, 2, 5] => Some((GraphType::Euclidean, "~E8".into())),
            _ => None,
        },
        [c1, c2] if degs[*c1] == 3 && degs[*c2] == 3 => {
            let leaves = |c: usize| (0..n).filter(|&w| g.adj[c][w] > 0 && degs[w] == 1).count();
            if leaves(*c1) == 2 && leaves(*c2) == 2 {
                Some((GraphType::Euclidean, format!("~D{}", n - 1)))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Classifies every connected component of the underlying graph of `q`.
pub fn classify_components(q: &Quiver) -> GraphClass {
    let components = q
        .components()
        .into_iter()
        .map(|verts| {
            let g = Multigraph::of_component(q, &verts);
            let verdict = tits_verdict(&g);
            let name = match catalogue_match(&g) {
                Some((family, name)) if family == verdict => Some(name),
                _ => None,
            };
            ComponentClass { vertices: verts.iter().map(|&v| q.vertices()[v].clone()).collect(), verdict, name }
        })
        .collect();
    GraphClass { components }
}

/// Catalogue family and name of each component, computed without the
/// quadratic form. Used to cross-check [`classify_components`].
pub fn catalogue_components(q: &Quiver) -> Vec<Option<(GraphType, String)>> {
    q.components().into_iter().map(|v| catalogue_match(&Multigraph::of_component(q, &v))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepType {
    Finite,
    Tame,
    Wild,
}

/// Representation type of a radical-square-zero algebra with quiver `q`,
/// read off the separated quiver.
pub fn reptype_radsq(q: &Quiver) -> RepType {
    separated_reptype(&classify_components(&separated_quiver(q)))
}

/// Finite/tame/wild verdict from a classification of the separated quiver.
pub fn separated_reptype(class: &GraphClass) -> RepType {
    let mut euclidean = false;
    for c in &class.components {
        match c.verdict {
            GraphType::Dynkin => {}
            GraphType::Euclidean => euclidean = true,
            GraphType::Neither => return RepType::Wild,
        }
    }
    if euclidean {
        RepType::Tame
    } else {
        RepType::Finite
    }
}

/// `dim HH^1(kQ)` for acyclic `Q`, summed over components of
/// `1 − |Q0| + Σ_a #paths(s(a), t(a))`.
pub fn hereditary_hh1_dim(q: &Quiver) -> Result<usize, QuiverError> {
    let order = q.topological_order()?;
    let n = q.vertex_count();
    // paths[u][v]: number of paths from u to v, trivial path included
    let mut paths = vec![vec![0u128; n]; n];
    for &u in &order {
        paths[u][u] = 1;
    }
    for &v in &order {
        for a in q.arrows().iter().filter(|a| a.target == v) {
            for u in 0..n {
                paths[u][v] += paths[u][a.source];
            }
        }
    }
    let mut total: i128 = 0;
    for comp in q.components() {
        let mut c: i128 = 1 - comp.len() as i128;
        for i in q.arrows_within(&comp) {
            let a = q.arrow(i);
            c += paths[a.source][a.target] as i128;
        }
        total += c;
    }
    Ok(total as usize)
}
