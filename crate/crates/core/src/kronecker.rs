//! Kronecker pairs and maximal Kronecker chains, their equivalence classes,
//! surjectivity of the attached maps to `sl_2`, and the count `m`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraTable, Word};
use crate::derlie::{delta_defined, delta_map, DeltaImage, DerivedSeries, Hh1};
use crate::error::DeltaError;
use crate::linalg::{is_zero_vector, Mat, Span, Vector};
use crate::quiver::{classify_components, separated_quiver, GraphType, Quiver};

/// Two parallel arrows, `a` declared before `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerPair {
    #[serde(skip)]
    pub a: usize,
    #[serde(skip)]
    pub b: usize,
    #[serde(rename = "a")]
    pub a_label: String,
    #[serde(rename = "b")]
    pub b_label: String,
    pub delta_defined: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    DoubleLoop,
    Cyclic,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerChain {
    /// Indices into the pair list.
    #[serde(skip)]
    pub pairs: Vec<usize>,
    #[serde(rename = "pairs")]
    pub labels: Vec<(String, String)>,
    pub shape: Shape,
    pub maximal: bool,
}

impl KroneckerChain {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// All parallel arrow classes of size exactly two, plus the classes of
/// three or more arrows (returned separately).
pub fn parallel_classes(q: &Quiver) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, a) in q.arrows().iter().enumerate() {
        groups.entry((a.source, a.target)).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    let (pairs, rest): (Vec<_>, Vec<_>) = classes.into_iter().filter(|c| c.len() >= 2).partition(|c| c.len() == 2);
    (pairs, rest)
}

pub fn kronecker_pairs(alg: &AlgebraTable) -> Vec<KroneckerPair> {
    let q = alg.quiver();
    parallel_classes(q)
        .0
        .into_iter()
        .map(|c| KroneckerPair {
            a: c[0],
            b: c[1],
            a_label: q.arrow(c[0]).label.clone(),
            b_label: q.arrow(c[1]).label.clone(),
            delta_defined: delta_defined(q, c[0], c[1]).is_ok(),
        })
        .collect()
}

fn nonzero_product(alg: &AlgebraTable, x: usize, y: usize) -> bool {
    !is_zero_vector(&alg.normal_form_word(&Word(vec![x, y])))
}

/// Whether pair `j` may follow pair `i` in a chain.
fn linked(alg: &AlgebraTable, pairs: &[KroneckerPair], i: usize, j: usize) -> bool {
    let q = alg.quiver();
    let (p, r) = (&pairs[i], &pairs[j]);
    q.arrow(p.a).target == q.arrow(r.a).source
        && [(p.a, r.a), (p.a, r.b), (p.b, r.a), (p.b, r.b)].iter().any(|&(x, y)| nonzero_product(alg, x, y))
}

fn shape_of(q: &Quiver, pairs: &[KroneckerPair], chain: &[usize]) -> Shape {
    let first = q.arrow(pairs[chain[0]].a);
    let last = q.arrow(pairs[*chain.last().unwrap()].a);
    if chain.len() == 1 && first.source == first.target {
        Shape::DoubleLoop
    } else if chain.len() > 1 && first.source == last.target {
        Shape::Cyclic
    } else {
        Shape::Linear
    }
}

struct ChainGraph {
    pairs: Vec<KroneckerPair>,
    next: Vec<Vec<usize>>,
    prev: Vec<Vec<usize>>,
}

impl ChainGraph {
    fn new(alg: &AlgebraTable) -> Self {
        let pairs = kronecker_pairs(alg);
        let n = pairs.len();
        let mut next = vec![Vec::new(); n];
        let mut prev = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if i != j && linked(alg, &pairs, i, j) {
                    next[i].push(j);
                    prev[j].push(i);
                }
            }
        }
        ChainGraph { pairs, next, prev }
    }

    fn is_chain(&self, c: &[usize]) -> bool {
        let mut seen = vec![false; self.pairs.len()];
        for &p in c {
            if std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        c.windows(2).all(|w| self.next[w[0]].contains(&w[1]))
    }

    fn is_maximal(&self, c: &[usize]) -> bool {
        let back = self.next[*c.last().unwrap()].iter().any(|j| !c.contains(j));
        let front = self.prev[c[0]].iter().any(|j| !c.contains(j));
        !back && !front
    }

    fn maximal(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.pairs.len()).map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            let ext: Vec<usize> = self.next[*c.last().unwrap()].iter().copied().filter(|j| !c.contains(j)).collect();
            if ext.is_empty() && self.is_maximal(&c) {
                out.push(c.clone());
            }
            for j in ext {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
        out.sort();
        out
    }
}

/// Equivalence class of maximal chains under rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainClass {
    /// Lexicographically smallest member.
    pub representative: KroneckerChain,
    pub members: Vec<KroneckerChain>,
}

fn to_chain(alg: &AlgebraTable, pairs: &[KroneckerPair], c: Vec<usize>) -> KroneckerChain {
    let labels = c.iter().map(|&i| (pairs[i].a_label.clone(), pairs[i].b_label.clone())).collect();
    KroneckerChain { shape: shape_of(alg.quiver(), pairs, &c), labels, pairs: c, maximal: true }
}

/// All maximal chains, including every rotation of cyclic ones.
pub fn all_maximal_chains(alg: &AlgebraTable) -> Vec<KroneckerChain> {
    let g = ChainGraph::new(alg);
    g.maximal().into_iter().map(|c| to_chain(alg, &g.pairs, c)).collect()
}

/// Classes of maximal chains: two chains are equivalent when one is the
/// rotation of the other and both are maximal, closed transitively.
pub fn equivalence_classes(alg: &AlgebraTable, chains: &[KroneckerChain]) -> Vec<ChainClass> {
    let g = ChainGraph::new(alg);
    let n = chains.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for i in 0..n {
        let mut rot = chains[i].pairs.clone();
        rot.rotate_left(1);
        if !g.is_chain(&rot) {
            continue;
        }
        if let Some(j) = chains.iter().position(|c| c.pairs == rot) {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
    }
    let mut groups: BTreeMap<usize, Vec<KroneckerChain>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(chains[i].clone());
    }
    let mut out: Vec<ChainClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by(|x, y| x.pairs.cmp(&y.pairs));
            ChainClass { representative: members[0].clone(), members }
        })
        .collect();
    out.sort_by(|x, y| x.representative.pairs.cmp(&y.representative.pairs));
    out
}

/// One representative per equivalence class of maximal chains.
pub fn maximal_chains(alg: &AlgebraTable) -> Vec<KroneckerChain> {
    let all = all_maximal_chains(alg);
    equivalence_classes(alg, &all).into_iter().map(|c| c.representative).collect()
}

/// Independent re-verification of the chain conditions and maximality.
pub fn verify_chain(alg: &AlgebraTable, chain: &KroneckerChain) -> bool {
    let q = alg.quiver();
    let pairs = kronecker_pairs(alg);
    let ps: Vec<&KroneckerPair> = chain.pairs.iter().map(|&i| &pairs[i]).collect();
    let parallel = ps.iter().all(|p| {
        let (x, y) = (q.arrow(p.a), q.arrow(p.b));
        x.source == y.source && x.target == y.target && p.a != p.b
    });
    let consecutive = ps.windows(2).all(|w| q.arrow(w[0].a).target == q.arrow(w[1].a).source);
    let composable = ps.windows(2).all(|w| {
        [(w[0].a, w[1].a), (w[0].a, w[1].b), (w[0].b, w[1].a), (w[0].b, w[1].b)]
            .iter()
            .any(|&(x, y)| nonzero_product(alg, x, y))
    });
    let mut arrows: Vec<usize> = ps.iter().flat_map(|p| [p.a, p.b]).collect();
    arrows.sort();
    let n = arrows.len();
    arrows.dedup();
    let distinct = arrows.len() == n;
    let extendable = pairs.iter().enumerate().any(|(i, p)| {
        if chain.pairs.contains(&i) || p.a == p.b {
            return false;
        }
        let mut front = vec![i];
        front.extend(&chain.pairs);
        let mut back = chain.pairs.clone();
        back.push(i);
        [front, back].iter().any(|c| {
            c.windows(2).all(|w| {
                let (x, y) = (&pairs[w[0]], &pairs[w[1]]);
                q.arrow(x.a).target == q.arrow(y.a).source
                    && [(x.a, y.a), (x.a, y.b), (x.b, y.a), (x.b, y.b)].iter().any(|&(u, v)| nonzero_product(alg, u, v))
            })
        })
    });
    parallel && consecutive && composable && distinct && !extendable
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    /// Monomials of a product or combination that fails to vanish.
    pub monomials: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteralCheck {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub witnesses: Vec<Witness>,
}

impl LiteralCheck {
    pub fn holds(&self) -> bool {
        self.s1 && self.s2 && self.s3
    }
}

/// Checks the standard relations in the given presentation, without any
/// change of basis of the arrow span.
pub fn standard_relations_literal(alg: &AlgebraTable, chain: &KroneckerChain) -> LiteralCheck {
    let q = alg.quiver();
    let pairs = kronecker_pairs(alg);
    let ps: Vec<&KroneckerPair> = chain.pairs.iter().map(|&i| &pairs[i]).collect();
    let in_chain: Vec<usize> = ps.iter().flat_map(|p| [p.a, p.b]).collect();
    let label = |x: usize, y: usize| alg.word_label(&Word(vec![x, y]));
    let mut witnesses = Vec::new();

    let mut s1 = true;
    for &c in &in_chain {
        for d in (0..q.arrow_count()).filter(|d| !in_chain.contains(d)) {
            for (x, y) in [(c, d), (d, c)] {
                if q.arrow(x).target == q.arrow(y).source && nonzero_product(alg, x, y) {
                    s1 = false;
                    witnesses.push(Witness { condition: "S1".into(), monomials: vec![label(x, y)] });
                }
            }
        }
    }

    let check_link = |cond: &str, p: &KroneckerPair, r: &KroneckerPair, witnesses: &mut Vec<Witness>| -> bool {
        let mut ok = true;
        for (x, y) in [(p.a, r.a), (p.b, r.b)] {
            if nonzero_product(alg, x, y) {
                ok = false;
                witnesses.push(Witness { condition: cond.into(), monomials: vec![label(x, y)] });
            }
        }
        let mut sum = alg.normal_form_word(&Word(vec![p.a, r.b]));
        crate::linalg::add_scaled(&mut sum, &alg.field().one(), &alg.normal_form_word(&Word(vec![p.b, r.a])));
        if !is_zero_vector(&sum) {
            ok = false;
            witnesses.push(Witness { condition: cond.into(), monomials: vec![label(p.a, r.b), label(p.b, r.a)] });
        }
        ok
    };

    let mut s2 = true;
    for w in ps.windows(2) {
        s2 &= check_link("S2", w[0], w[1], &mut witnesses);
    }
    let first = ps[0];
    let last = ps[ps.len() - 1];
    let s3 = if q.arrow(first.a).source == q.arrow(last.a).target {
        check_link("S3", last, first, &mut witnesses)
    } else {
        true
    };
    LiteralCheck { s1, s2, s3, witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDelta {
    pub pair: (String, String),
    /// `None` when the map is undefined for this pair.
    pub image_dim: Option<usize>,
    pub surjective: bool,
    #[serde(skip)]
    pub image: Option<DeltaImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSurjectivity {
    pub surjective: bool,
    pub per_pair: Vec<PairDelta>,
    pub kernels_coincide: bool,
}

/// Evaluates the map to `sl_2` on every pair of the chain where it is defined.
pub fn is_surjective_chain(
    alg: &AlgebraTable,
    h: &Hh1,
    chain: &KroneckerChain,
) -> Result<ChainSurjectivity, DeltaError> {
    let pairs = kronecker_pairs(alg);
    let mut per_pair = Vec::new();
    for &i in &chain.pairs {
        let p = &pairs[i];
        if !p.delta_defined {
            per_pair.push(PairDelta {
                pair: (p.a_label.clone(), p.b_label.clone()),
                image_dim: None,
                surjective: false,
                image: None,
            });
            continue;
        }
        let img = delta_map(alg, (p.a, p.b), h)?;
        per_pair.push(PairDelta {
            pair: (p.a_label.clone(), p.b_label.clone()),
            image_dim: Some(img.image_dim),
            surjective: img.surjective,
            image: Some(img),
        });
    }
    let kernels: Vec<Span> = per_pair
        .iter()
        .filter(|p| p.surjective)
        .map(|p| Span::from_vectors(alg.field(), h.dim(), &p.image.as_ref().unwrap().kernel_basis))
        .collect();
    let kernels_coincide =
        kernels.windows(2).all(|w| w[0].dim() == w[1].dim() && w[0].basis().iter().all(|v| w[1].contains(v)));
    Ok(ChainSurjectivity { surjective: per_pair.iter().any(|p| p.surjective), per_pair, kernels_coincide })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    pub char_ne_2: bool,
    pub qs_nonwild_compatible: bool,
    pub user_asserted_nonwild: bool,
    /// Set when some hypothesis of the decomposition is not established.
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub chain: KroneckerChain,
    pub class_size: usize,
    /// `None` in characteristic 2, where the map is not available.
    pub surjective: Option<bool>,
    pub literal_standard: bool,
    pub literal: LiteralCheck,
    pub per_pair: Vec<PairDelta>,
    pub kernels_coincide: Option<bool>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvablePart {
    /// `dim HH^1_rad − 3m`.
    pub expected_dim: i64,
    /// Dimension of the common kernel of the maps of all surjective classes.
    pub kernel_dim: usize,
    pub derived_series: DerivedSeries,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub pairs: Vec<KroneckerPair>,
    /// Parallel classes of three or more arrows.
    pub wild_parallel_classes: Vec<Vec<String>>,
    pub classes: Vec<ClassReport>,
    pub m: Option<usize>,
    pub hh1_rad_dim: usize,
    pub solvable: bool,
    pub derived_series: DerivedSeries,
    /// Whether `solvable ⇔ m = 0` holds for this algebra.
    pub solvable_iff_m_zero: Option<bool>,
    pub solvable_part: Option<SolvablePart>,
    pub flags: HypothesisFlags,
    pub warnings: Vec<String>,
}

/// Necessary condition for non-wildness: no parallel class of three or more
/// arrows and every component of the separated quiver Dynkin or Euclidean.
pub fn qs_nonwild_compatible(q: &Quiver) -> bool {
    parallel_classes(q).1.is_empty()
        && classify_components(&separated_quiver(q)).components.iter().all(|c| c.verdict != GraphType::Neither)
}

/// Chain analysis that never fails: in characteristic 2 the surjectivity
/// fields and `m` are left empty.
pub fn chain_report(alg: &AlgebraTable, h: &Hh1, assert_nonwild: bool) -> ChainReport {
    let q = alg.quiver();
    let f = alg.field();
    let char_ne_2 = f.characteristic() != 2;
    let compat = qs_nonwild_compatible(q);
    let flags = HypothesisFlags {
        char_ne_2,
        qs_nonwild_compatible: compat,
        user_asserted_nonwild: assert_nonwild,
        conditional: !(char_ne_2 && compat && assert_nonwild),
    };
    let mut warnings = Vec::new();
    let wild: Vec<Vec<String>> =
        parallel_classes(q).1.into_iter().map(|c| c.into_iter().map(|i| q.arrow(i).label.clone()).collect()).collect();
    if !wild.is_empty() {
        warnings.push("parallel classes of three or more arrows are excluded from chain analysis".into());
    }
    if !char_ne_2 {
        warnings.push("characteristic 2: sl_2 maps and m are not computed".into());
    }

    let all = all_maximal_chains(alg);
    let classes = equivalence_classes(alg, &all);
    let mut reports = Vec::new();
    let mut surjective_pairs: Vec<DeltaImage> = Vec::new();
    for class in &classes {
        let chain = class.representative.clone();
        let literal = standard_relations_literal(alg, &chain);
        let mut cw = Vec::new();
        if !compat {
            cw.push(format!("shape {:?} reported as computed; separated quiver screen failed", chain.shape));
        }
        let (surjective, per_pair, kernels_coincide) = if char_ne_2 {
            match is_surjective_chain(alg, h, &chain) {
                Ok(s) => {
                    if let Some(p) = s.per_pair.iter().find(|p| p.surjective) {
                        surjective_pairs.push(p.image.clone().unwrap());
                    }
                    (Some(s.surjective), s.per_pair, Some(s.kernels_coincide))
                }
                Err(e) => {
                    cw.push(e.to_string());
                    (Some(false), Vec::new(), None)
                }
            }
        } else {
            (None, Vec::new(), None)
        };
        reports.push(ClassReport {
            chain,
            class_size: class.members.len(),
            surjective,
            literal_standard: literal.holds(),
            literal,
            per_pair,
            kernels_coincide,
            warnings: cw,
        });
    }

    let derived_series = h.lie.derived_series();
    let solvable = derived_series.solvable;
    let m = char_ne_2.then(|| reports.iter().filter(|r| r.surjective == Some(true)).count());
    let solvable_part = m.map(|m| {
        let rows: Vec<Vector> = surjective_pairs
            .iter()
            .flat_map(|img| (0..3).map(move |k| img.images.iter().map(|s| s.to_vec()[k].clone()).collect::<Vector>()))
            .collect();
        let kernel = if rows.is_empty() {
            (0..h.dim())
                .map(|i| {
                    let mut v = h.lie.zero();
                    v[i] = f.one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(f, h.dim(), &rows).kernel_basis()
        };
        let sub = h.lie.subalgebra(&kernel);
        let ds = sub.derived_series();
        SolvablePart {
            expected_dim: h.dim() as i64 - 3 * m as i64,
            kernel_dim: kernel.len(),
            solvable: ds.solvable,
            derived_series: ds,
        }
    });
    ChainReport {
        pairs: kronecker_pairs(alg),
        wild_parallel_classes: wild,
        classes: reports,
        solvable_iff_m_zero: m.map(|m| solvable == (m == 0)),
        m,
        hh1_rad_dim: h.dim(),
        solvable,
        derived_series,
        solvable_part,
        flags,
        warnings,
    }
}

/// Chain analysis with the count `m`; refuses characteristic 2.
pub fn decomposition_report(alg: &AlgebraTable, h: &Hh1, assert_nonwild: bool) -> Result<ChainReport, DeltaError> {
    let p = alg.field().characteristic();
    if p == 2 {
        return Err(DeltaError::UnsupportedCharacteristic(p));
    }
    Ok(chain_report(alg, h, assert_nonwild))
}
