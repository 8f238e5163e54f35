//! Degree-by-degree Buchberger algorithm for homogeneous submodules of a
//! graded free module, with optional tracking of representations.
//!
//! Pairs are processed in increasing degree (the normal strategy for
//! homogeneous input). Redundant pairs are discarded with the Gebauer–Möller
//! update. When tracking is on, every reduction to zero yields a syzygy of the
//! inputs, and the collected syzygies generate the full syzygy module
//! (Schreyer). Inputs whose remainder is nonzero at the moment they are
//! inserted form a minimal generating set of the submodule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::modvec::{ModTerm, ModVec};
use crate::monomial::Monomial;

#[derive(Clone, Debug)]
pub struct GbElement<F: Field> {
    pub vec: ModVec<F>,
    pub track: Option<ModVec<F>>,
    pub lead_pos: usize,
    pub lead_mon: Monomial,
    pub degree: i32,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

#[derive(Clone, Debug)]
struct PendingInput<F: Field> {
    index: usize,
    vec: ModVec<F>,
    degree: i32,
}

/// Hard cap on basis size; the corpus never comes close.
const MAX_BASIS: usize = 20_000;

#[derive(Clone, Debug)]
pub struct Buchberger<F: Field> {
    field: F,
    track: bool,
    product_criterion: bool,
    basis: Vec<GbElement<F>>,
    pairs: BTreeMap<i32, Vec<Pair>>,
    pending: BTreeMap<i32, Vec<PendingInput<F>>>,
    input_shifts: Vec<i32>,
    syzygies: Vec<ModVec<F>>,
    minimal_inputs: Vec<usize>,
    completed_through: Option<i32>,
}

impl<F: Field> Buchberger<F> {
    /// Sets up a run on homogeneous `inputs` with explicit degrees (zero
    /// inputs need one too). With `track`, representations in terms of the
    /// inputs are carried along and syzygies are collected.
    pub fn new(field: F, inputs: Vec<ModVec<F>>, degrees: &[i32], track: bool) -> Result<Self> {
        assert_eq!(inputs.len(), degrees.len());
        let mut pending: BTreeMap<i32, Vec<PendingInput<F>>> = BTreeMap::new();
        for (index, (vec, &degree)) in inputs.into_iter().zip(degrees).enumerate() {
            if !vec.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("{vec:?}")));
            }
            if let Some(d) = vec.degree() {
                if d != degree {
                    return Err(Error::NotHomogeneous(format!(
                        "input {index} has degree {d}, declared {degree}"
                    )));
                }
            }
            pending.entry(degree).or_default().push(PendingInput { index, vec, degree });
        }
        Ok(Buchberger {
            field,
            track,
            product_criterion: !track,
            basis: Vec::new(),
            pairs: BTreeMap::new(),
            pending,
            input_shifts: degrees.to_vec(),
            syzygies: Vec::new(),
            minimal_inputs: Vec::new(),
            completed_through: None,
        })
    }

    /// Ideal case: enables Buchberger's product criterion, which is only
    /// valid for rank-one modules without syzygy tracking.
    pub fn ideal_mode(mut self) -> Self {
        self.product_criterion = !self.track;
        self
    }

    /// Module case: the product criterion does not apply.
    pub fn module_mode(mut self) -> Self {
        self.product_criterion = false;
        self
    }

    /// Runs until no work is left, or through degree `bound`.
    pub fn run(&mut self, bound: Option<i32>) -> Result<()> {
        loop {
            let next_pair = self.pairs.keys().next().copied();
            let next_input = self.pending.keys().next().copied();
            let k = match (next_pair, next_input) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if let Some(b) = bound {
                if k > b {
                    self.completed_through = Some(b);
                    return Ok(());
                }
            }
            if let Some(batch) = self.pairs.remove(&k) {
                for pair in batch {
                    self.process_pair(pair)?;
                }
            }
            // New pairs created above have degree > k, see `insert`.
            debug_assert!(!self.pairs.contains_key(&k));
            if let Some(inputs) = self.pending.remove(&k) {
                for inp in inputs {
                    self.process_input(inp)?;
                }
            }
            self.completed_through = Some(k);
        }
        self.completed_through = Some(i32::MAX);
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.completed_through == Some(i32::MAX)
    }

    pub fn basis(&self) -> &[GbElement<F>] {
        &self.basis
    }

    /// Syzygies of the inputs found so far (tracking mode only).
    pub fn syzygies(&self) -> &[ModVec<F>] {
        &self.syzygies
    }

    /// Indices of inputs that are minimal generators, in processing order.
    pub fn minimal_inputs(&self) -> &[usize] {
        &self.minimal_inputs
    }

    pub fn input_shifts(&self) -> &[i32] {
        &self.input_shifts
    }

    fn process_pair(&mut self, pair: Pair) -> Result<()> {
        let (gi, gj) = (&self.basis[pair.i], &self.basis[pair.j]);
        let mi = gi.lead_mon.divide_into(&pair.lcm).expect("lcm divisible");
        let mj = gj.lead_mon.divide_into(&pair.lcm).expect("lcm divisible");
        let one = self.field.one();
        // Basis elements are monic.
        let s = gi.vec.mul_term(&mi, &one).sub_multiple(&mj, &one, &gj.vec);
        let t = match (&gi.track, &gj.track) {
            (Some(ti), Some(tj)) => Some(ti.mul_term(&mi, &one).sub_multiple(&mj, &one, tj)),
            _ => None,
        };
        let (rem, track) = self.reduce(s, t);
        if rem.is_zero() {
            if let Some(t) = track {
                if !t.is_zero() {
                    self.syzygies.push(t);
                }
            }
        } else {
            self.insert(rem, track)?;
        }
        Ok(())
    }

    fn process_input(&mut self, inp: PendingInput<F>) -> Result<()> {
        let track = self
            .track
            .then(|| ModVec::unit(self.field, inp.index, self.input_shifts[inp.index]));
        let (rem, track) = self.reduce(inp.vec, track);
        if rem.is_zero() {
            if let Some(t) = track {
                self.syzygies.push(t);
            }
        } else {
            debug_assert_eq!(rem.degree(), Some(inp.degree));
            self.minimal_inputs.push(inp.index);
            self.insert(rem, track)?;
        }
        Ok(())
    }

    fn find_reducer(&self, t: &ModTerm<F::Elem>) -> Option<usize> {
        self.basis
            .iter()
            .position(|g| g.lead_pos == t.pos && g.lead_mon.divides(&t.mon))
    }

    /// Full reduction of `v` (and its tracking vector) by the current basis.
    pub fn reduce(&self, v: ModVec<F>, mut track: Option<ModVec<F>>) -> (ModVec<F>, Option<ModVec<F>>) {
        let f = self.field;
        let mut rest = v;
        let mut done: Vec<ModTerm<F::Elem>> = Vec::new();
        while let Some(t) = rest.lead().cloned() {
            match self.find_reducer(&t) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.lead_mon.divide_into(&t.mon).expect("divisible");
                    rest = rest.sub_multiple(&q, &t.coef, &g.vec);
                    if let (Some(tr), Some(gt)) = (track.as_mut(), g.track.as_ref()) {
                        *tr = tr.sub_multiple(&q, &t.coef, gt);
                    }
                }
                None => {
                    done.push(t);
                    rest = rest.without_lead();
                }
            }
        }
        (ModVec::from_terms(f, done), track)
    }

    fn insert(&mut self, v: ModVec<F>, track: Option<ModVec<F>>) -> Result<()> {
        if self.basis.len() >= MAX_BASIS {
            return Err(Error::LimitExceeded("Gröbner basis size".into()));
        }
        let c = self.field.inv(&v.lead().expect("nonzero").coef).expect("nonzero lead");
        let v = v.scale(&c);
        let track = track.map(|t| t.scale(&c));
        let lead = v.lead().expect("nonzero").clone();
        let h = self.basis.len();
        self.basis.push(GbElement {
            degree: lead.deg,
            lead_pos: lead.pos,
            lead_mon: lead.mon,
            vec: v,
            track,
        });
        self.update_pairs(h);
        Ok(())
    }

    fn pair_degree(&self, i: usize, lcm: &Monomial) -> i32 {
        let g = &self.basis[i];
        g.degree - g.lead_mon.degree() as i32 + lcm.degree() as i32
    }

    /// Gebauer–Möller update for the new element `h`.
    fn update_pairs(&mut self, h: usize) {
        let hp = self.basis[h].lead_pos;
        let hm = self.basis[h].lead_mon;
        let mut candidates: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.basis[g].lead_pos == hp)
            .map(|g| {
                let gm = self.basis[g].lead_mon;
                (g, hm.lcm(&gm), hm.is_coprime(&gm))
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, lcm, coprime)) = candidates.pop() {
            let product = self.product_criterion && coprime;
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&lcm));
            if product || !dominated {
                kept.push((g, lcm, coprime));
            }
        }
        if self.product_criterion {
            kept.retain(|(_, _, coprime)| !coprime);
        }

        // Prune old pairs whose lcm is a multiple of the new lead.
        for batch in self.pairs.values_mut() {
            batch.retain(|p| {
                if self.basis[p.i].lead_pos != hp || !hm.divides(&p.lcm) {
                    return true;
                }
                let li = self.basis[p.i].lead_mon.lcm(&hm);
                let lj = self.basis[p.j].lead_mon.lcm(&hm);
                li == p.lcm || lj == p.lcm
            });
        }
        self.pairs.retain(|_, b| !b.is_empty());

        for (g, lcm, _) in kept {
            let degree = self.pair_degree(h, &lcm);
            self.pairs.entry(degree).or_default().push(Pair { i: g, j: h, lcm });
        }
    }

    /// Reduced Gröbner basis of the submodule (requires a complete run).
    pub fn reduced_basis(&self) -> Vec<ModVec<F>> {
        assert!(self.is_complete(), "reduced basis of an incomplete run");
        let keep: Vec<usize> = (0..self.basis.len())
            .filter(|&i| {
                let gi = &self.basis[i];
                !(0..self.basis.len()).any(|j| {
                    let gj = &self.basis[j];
                    j != i
                        && gj.lead_pos == gi.lead_pos
                        && gj.lead_mon.divides(&gi.lead_mon)
                        && (gj.lead_mon != gi.lead_mon || j < i)
                })
            })
            .collect();
        let sub = Buchberger {
            field: self.field,
            track: false,
            product_criterion: false,
            basis: keep
                .iter()
                .map(|&i| GbElement { track: None, ..self.basis[i].clone() })
                .collect(),
            pairs: BTreeMap::new(),
            pending: BTreeMap::new(),
            input_shifts: Vec::new(),
            syzygies: Vec::new(),
            minimal_inputs: Vec::new(),
            completed_through: None,
        };
        let mut out: Vec<ModVec<F>> = sub
            .basis
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let lead = g.vec.lead().unwrap().clone();
                let tail = g.vec.without_lead();
                let (tail_nf, _) = sub.reduce_excluding(tail, k);
                ModVec::from_terms(self.field, vec![lead]).add(&tail_nf).monic()
            })
            .collect();
        out.sort_by(|a, b| {
            let (ta, tb) = (a.lead().unwrap(), b.lead().unwrap());
            crate::monomial::module_top(ta.deg, &ta.mon, ta.pos, tb.deg, &tb.mon, tb.pos)
        });
        out
    }

    fn reduce_excluding(&self, v: ModVec<F>, skip: usize) -> (ModVec<F>, ()) {
        let f = self.field;
        let mut rest = v;
        let mut done: Vec<ModTerm<F::Elem>> = Vec::new();
        while let Some(t) = rest.lead().cloned() {
            let reducer = (0..self.basis.len()).find(|&k| {
                let g = &self.basis[k];
                k != skip && g.lead_pos == t.pos && g.lead_mon.divides(&t.mon)
            });
            match reducer {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.lead_mon.divide_into(&t.mon).expect("divisible");
                    rest = rest.sub_multiple(&q, &t.coef, &g.vec);
                }
                None => {
                    done.push(t);
                    rest = rest.without_lead();
                }
            }
        }
        (ModVec::from_terms(f, done), ())
    }

    /// Leading terms (position, monomial) of the current basis.
    pub fn leads(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|g| (g.lead_pos, g.lead_mon)).collect()
    }
}
