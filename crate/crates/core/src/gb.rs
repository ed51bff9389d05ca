//! Buchberger's algorithm for submodules of free modules over F_p[x_1..x_n].
//!
//! Module elements are stored as sparse lists of `(position, monomial, coefficient)`
//! sorted descending in the module order of a [`Ctx`]. The order is a block
//! order: the first `elim` variables are compared first (grevlex), then the
//! position (lower index is larger), then the remaining variables (grevlex).
//! With `elim == 0` this is position-over-term with grevlex.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::ring::{divides, grevlex_cmp, mono_div, mono_lcm, mono_mul, total_degree, Exps};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Ctx {
    pub field: PrimeField,
    pub elim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub pos: u32,
    pub mon: Exps,
    pub coef: u32,
}

pub(crate) type SVec = Vec<Term>;

impl Ctx {
    pub fn new(field: PrimeField, elim: usize) -> Self {
        Ctx { field, elim }
    }

    pub fn cmp(&self, pa: u32, a: &[u32], pb: u32, b: &[u32]) -> Ordering {
        let k = self.elim;
        if k > 0 {
            match grevlex_cmp(&a[..k], &b[..k]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match pb.cmp(&pa) {
            Ordering::Equal => {}
            o => return o,
        }
        grevlex_cmp(&a[k..], &b[k..])
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.pos, &a.mon, b.pos, &b.mon)
    }

    /// Sorts and combines raw terms into canonical form.
    pub fn normalize(&self, mut v: Vec<Term>) -> SVec {
        v.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: SVec = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mon == t.mon => {
                    last.coef = self.field.add(last.coef, t.coef);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        out
    }

    /// `a - c * m * b`.
    pub fn sub_mul(&self, a: &[Term], b: &[Term], m: &[u32], c: u32) -> SVec {
        let f = self.field;
        let negc = f.neg(c % f.p());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &Term| Term { pos: t.pos, mon: mono_mul(&t.mon, m), coef: f.mul(t.coef, negc) };
        let mut bj = b.first().map(scaled);
        while i < a.len() {
            let Some(bt) = bj.as_ref() else { break };
            match self.cmp_terms(&a[i], bt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coef, bt.coef);
                    if s != 0 {
                        out.push(Term { pos: a[i].pos, mon: a[i].mon.clone(), coef: s });
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(scaled);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(t) = bj {
            out.push(t);
            out.extend(b[j + 1..].iter().map(scaled));
        }
        out
    }

    pub fn make_monic(&self, v: &mut SVec) {
        if let Some(lc) = v.first().map(|t| t.coef) {
            if lc != 1 {
                let inv = self.field.inv(lc);
                for t in v.iter_mut() {
                    t.coef = self.field.mul(t.coef, inv);
                }
            }
        }
    }

    fn find_divisor<'a>(&self, t: &Term, basis: &'a [SVec]) -> Option<&'a SVec> {
        basis.iter().find(|g| {
            let l = &g[0];
            l.pos == t.pos && divides(&l.mon, &t.mon)
        })
    }

    /// Full normal form of `f` with respect to a list of monic elements.
    pub fn normal_form(&self, f: &[Term], basis: &[SVec]) -> SVec {
        let mut rem: SVec = Vec::new();
        let mut cur: SVec = f.to_vec();
        let mut i = 0;
        while i < cur.len() {
            match self.find_divisor(&cur[i], basis) {
                Some(g) => {
                    let m = mono_div(&cur[i].mon, &g[0].mon);
                    let c = cur[i].coef;
                    cur = self.sub_mul(&cur[i..], g, &m, c);
                    i = 0;
                }
                None => {
                    rem.push(cur[i].clone());
                    i += 1;
                }
            }
        }
        rem
    }

    fn single_position(v: &[Term]) -> bool {
        v.iter().all(|t| t.pos == v[0].pos)
    }

    /// Reduced Gröbner basis: monic, inter-reduced, sorted by descending leading term.
    pub fn groebner(&self, gens: Vec<SVec>) -> Vec<SVec> {
        let mut gb = Buchberger { ctx: *self, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        let mut gens: Vec<SVec> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| self.cmp_terms(&a[0], &b[0]));
        for g in gens {
            gb.insert_reduced(g);
        }
        while let Some(pair) = gb.pop_pair() {
            let s = gb.spoly(pair.i, pair.j);
            gb.insert_reduced(s);
        }
        gb.finish()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    pos: u32,
    deg: u64,
}

struct Buchberger {
    ctx: Ctx,
    polys: Vec<SVec>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn active_polys(&self) -> Vec<SVec> {
        self.active.iter().map(|&k| self.polys[k].clone()).collect()
    }

    fn insert_reduced(&mut self, f: SVec) {
        let basis: Vec<SVec> = self.active_polys();
        let mut h = self.ctx.normal_form(&f, &basis);
        if h.is_empty() {
            return;
        }
        self.ctx.make_monic(&mut h);
        self.polys.push(h);
        let hi = self.polys.len() - 1;
        self.update(hi);
    }

    fn lead(&self, k: usize) -> &Term {
        &self.polys[k][0]
    }

    fn coprime_criterion(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (self.lead(a), self.lead(b));
        la.pos == lb.pos
            && la.mon.iter().zip(&lb.mon).all(|(x, y)| *x == 0 || *y == 0)
            && Ctx::single_position(&self.polys[a])
            && Ctx::single_position(&self.polys[b])
    }

    /// Gebauer–Möller pair update after adding `polys[h]`.
    fn update(&mut self, h: usize) {
        let lh = self.lead(h).clone();
        let mut c: Vec<(usize, Exps)> = self
            .active
            .iter()
            .filter(|&&g| self.lead(g).pos == lh.pos)
            .map(|&g| (g, mono_lcm(&lh.mon, &self.lead(g).mon)))
            .collect();
        let mut d: Vec<(usize, Exps)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let keep = self.coprime_criterion(h, g1)
                || (!c.iter().any(|(_, l2)| divides(l2, &l1)) && !d.iter().any(|(_, l2)| divides(l2, &l1)));
            if keep {
                d.push((g1, l1));
            }
        }
        let e: Vec<(usize, Exps)> = d.into_iter().filter(|(g, _)| !self.coprime_criterion(h, *g)).collect();
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let drop = p.pos == lh.pos && divides(&lh.mon, &p.lcm) && {
                let l1 = mono_lcm(&self.lead(p.i).mon, &lh.mon);
                let l2 = mono_lcm(&lh.mon, &self.lead(p.j).mon);
                l1 != p.lcm && l2 != p.lcm
            };
            if !drop {
                self.pairs.push(p);
            }
        }
        for (g, l) in e {
            let deg = total_degree(&l);
            self.pairs.push(Pair { i: g, j: h, lcm: l, pos: lh.pos, deg });
        }
        let polys = &self.polys;
        self.active.retain(|&g| {
            let lg = &polys[g][0];
            !(lg.pos == lh.pos && divides(&lh.mon, &lg.mon))
        });
        self.active.push(h);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ctx = self.ctx;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.deg.cmp(&pb.deg).then_with(|| ctx.cmp(pa.pos, &pa.lcm, pb.pos, &pb.lcm))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, i: usize, j: usize) -> SVec {
        let (a, b) = (&self.polys[i], &self.polys[j]);
        let l = mono_lcm(&a[0].mon, &b[0].mon);
        let ma = mono_div(&l, &a[0].mon);
        let mb = mono_div(&l, &b[0].mon);
        let am: SVec = a.iter().map(|t| Term { pos: t.pos, mon: mono_mul(&t.mon, &ma), coef: t.coef }).collect();
        self.ctx.sub_mul(&am, b, &mb, 1)
    }

    fn finish(self) -> Vec<SVec> {
        let ctx = self.ctx;
        let mut basis: Vec<SVec> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        // minimalize
        basis.sort_by(|a, b| ctx.cmp_terms(&a[0], &b[0]));
        let mut minimal: Vec<SVec> = Vec::new();
        for g in basis {
            if !minimal.iter().any(|m| m[0].pos == g[0].pos && divides(&m[0].mon, &g[0].mon)) {
                minimal.push(g);
            }
        }
        // tail-reduce
        let mut out = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let others: Vec<SVec> =
                minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g.clone()).collect();
            let head = minimal[k][0].clone();
            let mut tail = ctx.normal_form(&minimal[k][1..], &others);
            let mut v = vec![head];
            v.append(&mut tail);
            ctx.make_monic(&mut v);
            out.push(v);
        }
        out.sort_by(|a, b| ctx.cmp_terms(&b[0], &a[0]));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pos: u32, mon: &[u32], coef: u32) -> Term {
        Term { pos, mon: Exps::from_slice(mon), coef }
    }

    #[test]
    fn ideal_difference_of_generators() {
        // {x^2, x^2 + x} over F_2 -> {x}
        let ctx = Ctx::new(PrimeField::new(2).unwrap(), 0);
        let g = ctx.groebner(vec![vec![t(0, &[2], 1)], vec![t(0, &[2], 1), t(0, &[1], 1)]]);
        assert_eq!(g, vec![vec![t(0, &[1], 1)]]);
    }

    #[test]
    fn position_over_term() {
        let ctx = Ctx::new(PrimeField::new(2).unwrap(), 0);
        // e_0 beats any monomial in position 1
        assert_eq!(ctx.cmp(0, &[0, 0], 1, &[5, 5]), Ordering::Greater);
        let ctx = Ctx::new(PrimeField::new(2).unwrap(), 1);
        // with an elimination block, the tag variable dominates positions
        assert_eq!(ctx.cmp(1, &[1, 0], 0, &[0, 9]), Ordering::Greater);
    }
}
