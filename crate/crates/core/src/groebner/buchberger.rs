use std::cmp::Ordering;
use std::time::Instant;

use super::poly::{FPoly, Mono, MAX_VARS};
use super::GroebnerError;

/// Limits on a Gröbner basis computation.
#[derive(Clone, Debug)]
pub struct Budget {
    /// S-pairs reduced before giving up.
    pub max_pairs: usize,
    /// Largest S-pair degree allowed.
    pub max_degree: u32,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pairs: 2_000_000, max_degree: 40, deadline: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

impl Pair {
    fn key(&self) -> (u32, Mono, usize, usize) {
        (self.sugar, self.lcm, self.i, self.j)
    }
}

fn mask(m: &Mono) -> u32 {
    (0..MAX_VARS).filter(|&i| m.exp(i) > 0).fold(0, |acc, i| acc | 1 << i)
}

struct State {
    polys: Vec<FPoly>,
    sugar: Vec<u32>,
    lms: Vec<Mono>,
    masks: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn find_reducer(&self, t: &Mono) -> Option<usize> {
        let tm = mask(t);
        self.active.iter().copied().find(|&k| self.masks[k] & !tm == 0 && self.lms[k].divides(t))
    }

    /// Full reduction against the active basis; reducers are monic.
    fn reduce(&self, f: &FPoly) -> FPoly {
        reduce_with(f, |t| self.find_reducer(t).map(|k| &self.polys[k]))
    }

    fn insert(&mut self, h: FPoly, sugar: u32) {
        let k = self.polys.len();
        let lm = h.lm();
        self.lms.push(lm);
        self.masks.push(mask(&lm));
        self.polys.push(h);
        self.sugar.push(sugar);
        self.update(k);
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lms[i].lcm(&self.lms[j]);
        let s = |k: usize| self.sugar[k] + lcm.degree() - self.lms[k].degree();
        Pair { i, j, lcm, sugar: s(i).max(s(j)) }
    }

    /// Gebauer–Möller installation of basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lms[h];
        let mut c: Vec<Pair> = self.active.iter().map(|&g| self.pair(g, h)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = lh.is_coprime(&self.lms[p.i]);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !lh.is_coprime(&self.lms[p.i])).collect();
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lms[p.i].lcm(&lh) != p.lcm && lms[p.j].lcm(&lh) != p.lcm)
        });
        self.pairs.extend(e);
        self.active.retain(|&g| !lh.divides(&lms[g]));
        self.active.push(h);
    }

    fn spoly(&self, p: &Pair) -> FPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = self.lms[p.i].quotient_of(&p.lcm);
        let mg = self.lms[p.j].quotient_of(&p.lcm);
        let a = f.mul_term(&mf, 1);
        a.add_scaled(g, &mg, f.field().neg(1))
    }
}

/// Full reduction of `f`, with `pick` returning a monic reducer for a monomial.
pub(super) fn reduce_with<'a>(f: &FPoly, pick: impl Fn(&Mono) -> Option<&'a FPoly>) -> FPoly {
    let field = f.field();
    let mut done: Vec<(Mono, u32)> = Vec::new();
    let mut rest = f.clone();
    while let Some(&(m, c)) = rest.leading() {
        match pick(&m) {
            Some(g) => {
                let q = g.lm().quotient_of(&m);
                rest = rest.add_scaled(g, &q, field.neg(c));
            }
            None => {
                done.push((m, c));
                rest = FPoly::from_sorted(field, f.nvars(), rest.terms()[1..].to_vec());
            }
        }
    }
    done.extend_from_slice(rest.terms());
    FPoly::from_sorted(field, f.nvars(), done)
}

/// Reduced Gröbner basis for grevlex, sorted by increasing leading monomial.
pub fn groebner_basis(gens: &[FPoly], budget: &Budget) -> Result<(Vec<FPoly>, GbStats), GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok((Vec::new(), GbStats::default()));
    };
    let (field, nvars) = (first.field(), first.nvars());
    let mut inputs: Vec<FPoly> = gens.iter().filter(|g| !g.is_zero()).map(FPoly::monic).collect();
    inputs.sort_by(|a, b| (a.degree(), a.lm()).cmp(&(b.degree(), b.lm())));
    inputs.reverse();
    let mut st = State { polys: Vec::new(), sugar: Vec::new(), lms: Vec::new(), masks: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut stats = GbStats::default();
    loop {
        let best = st.pairs.iter().enumerate().min_by(|a, b| a.1.key().cmp(&b.1.key())).map(|(k, p)| (k, p.sugar));
        let next_input = inputs.last().and_then(FPoly::degree);
        let take_input = match (best, next_input) {
            (None, None) => break,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some((_, s)), Some(d)) => d.cmp(&s) != Ordering::Greater,
        };
        if let Some(t) = budget.deadline {
            if Instant::now() > t {
                return Err(GroebnerError::BudgetExhausted { reason: "deadline".into(), pairs: stats.pairs });
            }
        }
        let (h, sugar) = if take_input {
            let f = inputs.pop().expect("input present");
            let d = f.degree().unwrap_or(0);
            (st.reduce(&f), d)
        } else {
            let (k, _) = best.expect("pair present");
            let p = st.pairs.swap_remove(k);
            if p.lcm.degree() > budget.max_degree {
                return Err(GroebnerError::BudgetExhausted {
                    reason: format!("S-pair of degree {} exceeds {}", p.lcm.degree(), budget.max_degree),
                    pairs: stats.pairs,
                });
            }
            if stats.pairs >= budget.max_pairs {
                return Err(GroebnerError::BudgetExhausted { reason: format!("more than {} S-pairs", budget.max_pairs), pairs: stats.pairs });
            }
            stats.pairs += 1;
            stats.max_degree = stats.max_degree.max(p.lcm.degree());
            (st.reduce(&st.spoly(&p)), p.sugar)
        };
        if h.is_zero() {
            stats.zero_reductions += !take_input as usize;
            continue;
        }
        if h.lm() == Mono::ONE {
            return Ok((vec![FPoly::constant(field, nvars, 1)], stats));
        }
        st.insert(h.monic(), sugar);
    }
    Ok((interreduce(st.active.iter().map(|&k| st.polys[k].clone()).collect()), stats))
}

/// Minimal, tail-reduced, monic, sorted by leading monomial.
fn interreduce(mut g: Vec<FPoly>) -> Vec<FPoly> {
    g.sort_by_key(|a| a.lm());
    let mut minimal: Vec<FPoly> = Vec::new();
    for f in g {
        if !minimal.iter().any(|h| h.lm().divides(&f.lm())) {
            minimal.push(f);
        }
    }
    let lms: Vec<Mono> = minimal.iter().map(FPoly::lm).collect();
    let out: Vec<FPoly> = (0..minimal.len())
        .map(|k| {
            let f = &minimal[k];
            let tail = FPoly::from_sorted(f.field(), f.nvars(), f.terms()[1..].to_vec());
            let r = reduce_with(&tail, |t| (0..minimal.len()).find(|&j| j != k && lms[j].divides(t)).map(|j| &minimal[j]));
            let mut terms = vec![f.terms()[0]];
            terms.extend_from_slice(r.terms());
            FPoly::from_sorted(f.field(), f.nvars(), terms)
        })
        .collect();
    out
}
