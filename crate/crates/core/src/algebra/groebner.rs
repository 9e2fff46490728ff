//! Two-sided Gröbner bases in path algebras under the length-then-lex order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::error::AlgebraError;
use crate::field::Scalar;
use crate::quiver::Quiver;

/// A nontrivial path, stored as arrow indices. Ordered by length first, then
/// lexicographically by arrow declaration index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &[usize]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &[usize]) -> Option<usize> {
        if pat.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pat.len()).find(|&i| &self.0[i..i + pat.len()] == pat)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of paths; zero coefficients are never stored.
pub type Poly = BTreeMap<Word, Scalar>;

pub fn add_term(p: &mut Poly, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

pub fn leading(p: &Poly) -> Option<(&Word, &Scalar)> {
    p.last_key_value()
}

fn monic(p: Poly) -> Poly {
    let Some((_, lc)) = leading(&p) else {
        return p;
    };
    let inv = lc.inv().expect("nonzero leading coefficient");
    p.into_iter().map(|(w, c)| (w, &c * &inv)).collect()
}

/// `p` with every term multiplied by `left` on the left and `right` on the right.
fn sandwich(left: &[usize], p: &Poly, right: &[usize], scale: &Scalar) -> Poly {
    p.iter()
        .map(|(w, c)| {
            let mut v = Vec::with_capacity(left.len() + w.len() + right.len());
            v.extend_from_slice(left);
            v.extend_from_slice(&w.0);
            v.extend_from_slice(right);
            (Word(v), c * scale)
        })
        .collect()
}

/// Fully reduces `p` modulo the monic basis `gb`.
pub fn reduce(mut p: Poly, gb: &[Poly]) -> Poly {
    let leads: Vec<&Word> = gb.iter().map(|g| leading(g).expect("nonzero basis element").0).collect();
    loop {
        let hit = p.iter().rev().find_map(|(w, c)| {
            leads.iter().enumerate().find_map(|(gi, l)| w.find(&l.0).map(|pos| (w.clone(), c.clone(), gi, pos)))
        });
        let Some((w, c, gi, pos)) = hit else {
            return p;
        };
        let l = leads[gi].len();
        let neg = -&c;
        for (tw, tc) in sandwich(&w.0[..pos], &gb[gi], &w.0[pos + l..], &neg) {
            add_term(&mut p, tw, tc);
        }
    }
}

/// Makes the generators monic and mutually reduced.
pub fn interreduce(gens: Vec<Poly>) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.into_iter().filter(|p| !p.is_empty()).map(monic).collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < g.len() {
            let others: Vec<Poly> = g.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            let r = reduce(g[i].clone(), &others);
            if r != g[i] {
                changed = true;
                if r.is_empty() {
                    g.remove(i);
                    continue;
                }
                g[i] = monic(r);
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    g.sort_by(|a, b| leading(a).unwrap().0.cmp(leading(b).unwrap().0));
    g
}

/// Overlap lengths `k` with the last `k` letters of `a` equal to the first
/// `k` letters of `b`, excluding full containment.
fn overlaps(a: &Word, b: &Word) -> Vec<usize> {
    let max = a.len().min(b.len());
    (1..max).filter(|&k| a.0[a.len() - k..] == b.0[..k]).collect()
}

fn poly_key(p: &Poly) -> String {
    format!("{:?}", p.iter().collect::<Vec<_>>())
}

/// Processes every overlap ambiguity of length at most `bound`.
fn saturate(mut g: Vec<Poly>, bound: usize, max_elements: usize, cap: usize) -> Result<Vec<Poly>, AlgebraError> {
    let mut processed: HashSet<(String, String, usize)> = HashSet::new();
    loop {
        let keys: Vec<String> = g.iter().map(poly_key).collect();
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..g.len() {
            let li = leading(&g[i]).unwrap().0;
            for j in 0..g.len() {
                let lj = leading(&g[j]).unwrap().0;
                for k in overlaps(li, lj) {
                    let len = li.len() + lj.len() - k;
                    if len > bound || processed.contains(&(keys[i].clone(), keys[j].clone(), k)) {
                        continue;
                    }
                    if best.is_none_or(|b| len < b.3) {
                        best = Some((i, j, k, len));
                    }
                }
            }
        }
        let Some((i, j, k, _)) = best else {
            return Ok(g);
        };
        processed.insert((keys[i].clone(), keys[j].clone(), k));
        let li = leading(&g[i]).unwrap().0.clone();
        let lj = leading(&g[j]).unwrap().0.clone();
        let one = g[i].values().next().unwrap().field().one();
        let neg = -&one;
        let mut s = sandwich(&[], &g[i], &lj.0[k..], &one);
        for (w, c) in sandwich(&li.0[..li.len() - k], &g[j], &[], &neg) {
            add_term(&mut s, w, c);
        }
        let r = reduce(s, &g);
        if !r.is_empty() {
            g.push(r);
            g = interreduce(g);
            if g.len() > max_elements {
                return Err(AlgebraError::NotFiniteDimensional { cap });
            }
        }
    }
}

/// Normal paths of length at least one, or `None` when some normal path
/// reaches length `cap` or the count exceeds `max_count`.
pub fn normal_words(g: &[Poly], quiver: &Quiver, cap: usize, max_count: usize) -> Option<Vec<Word>> {
    let leads: Vec<&Word> = g.iter().map(|p| leading(p).unwrap().0).collect();
    let is_normal_ext = |w: &Word| leads.iter().all(|l| l.len() > w.len() || w.0[w.len() - l.len()..] != l.0[..]);
    let mut all: Vec<Word> = Vec::new();
    let mut frontier: Vec<Word> =
        (0..quiver.arrow_count()).map(|a| Word(vec![a])).filter(|w| is_normal_ext(w)).collect();
    let mut len = 1;
    while !frontier.is_empty() {
        if len >= cap || all.len() + frontier.len() > max_count {
            return None;
        }
        let mut next = Vec::new();
        for w in &frontier {
            let t = quiver.arrow(*w.0.last().unwrap()).target;
            for (a, arrow) in quiver.arrows().iter().enumerate() {
                if arrow.source != t {
                    continue;
                }
                let nw = w.concat(&[a]);
                if is_normal_ext(&nw) {
                    next.push(nw);
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
        len += 1;
    }
    all.sort();
    Some(all)
}

/// Reduced Gröbner basis together with the certified normal paths.
#[derive(Clone, Debug)]
pub struct Certified {
    pub basis: Vec<Poly>,
    pub normal: Vec<Word>,
    /// Smallest length with no normal path.
    pub nil_length: usize,
}

const MAX_NORMAL: usize = 200_000;
const MAX_ELEMENTS: usize = 20_000;

/// Runs Buchberger's procedure with an escalating overlap bound until the
/// normal paths are finite and every overlap up to twice the nilpotency
/// length has been resolved.
pub fn certify(relations: Vec<Poly>, quiver: &Quiver, cap: usize) -> Result<Certified, AlgebraError> {
    let max_gen = relations.iter().filter_map(|p| leading(p).map(|(w, _)| w.len())).max().unwrap_or(1);
    let mut bound = max_gen + 1;
    let mut g = interreduce(relations);
    loop {
        g = saturate(g, bound, MAX_ELEMENTS, cap)?;
        match normal_words(&g, quiver, cap, MAX_NORMAL) {
            Some(normal) => {
                let nil_length = normal.last().map_or(1, |w| w.len() + 1);
                if bound >= 2 * nil_length {
                    return Ok(Certified { basis: g, normal, nil_length });
                }
                bound = 2 * nil_length;
            }
            None => {
                if bound >= 2 * cap {
                    return Err(AlgebraError::NotFiniteDimensional { cap });
                }
                bound = (bound * 2).min(2 * cap);
            }
        }
    }
}
