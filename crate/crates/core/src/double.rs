//! Generalized quantum doubles over the evaluation pairing.
//!
//! Two concrete shapes are built: the double of the dual functional algebra
//! (with co-opposite comultiplication) against the quantum matrix algebra,
//! and the double of the algebra against itself over the pairing. The first
//! carries the projection onto its dual factor; the second carries the
//! multiplication projection and the induced bilinear form.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::functionals::{
    self, dual_mul, DualElement, DualWord, FunctionalWitness,
};
use crate::qmatrix::{self, QElement, QMonomial};
use crate::scalar::{QzContext, RatFunc};
use crate::sigma::{self, Sign};

/// Element of the double: linear combination of (dual word, monomial) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleElement {
    n: u8,
    terms: BTreeMap<(DualWord, QMonomial), RatFunc>,
}

impl DoubleElement {
    pub fn zero(n: usize) -> Self {
        DoubleElement {
            n: n as u8,
            terms: BTreeMap::new(),
        }
    }

    /// The unit: counit functional tensor the unit monomial.
    pub fn one(n: usize) -> Self {
        let mut e = DoubleElement::zero(n);
        e.add_term(Vec::new(), QMonomial::unit(), RatFunc::one());
        e
    }

    /// Embed a dual element as `F (x) 1`.
    pub fn from_dual(f: &DualElement) -> Self {
        let mut e = DoubleElement::zero(f.n());
        for (w, c) in f.terms() {
            e.add_term(w.clone(), QMonomial::unit(), c.clone());
        }
        e
    }

    /// Embed an algebra element as `eps (x) h`.
    pub fn from_algebra(h: &QElement) -> Self {
        let mut e = DoubleElement::zero(h.n());
        for (m, c) in h.terms() {
            e.add_term(Vec::new(), m.clone(), c.clone());
        }
        e
    }

    /// Simple tensor `F (x) h`, extended bilinearly.
    pub fn tensor(f: &DualElement, h: &QElement) -> Result<Self> {
        if f.n() != h.n() {
            return Err(Error::ContextMismatch(f.n(), h.n()));
        }
        let mut e = DoubleElement::zero(f.n());
        for (w, cw) in f.terms() {
            for (m, cm) in h.terms() {
                e.add_term(w.clone(), m.clone(), cw.mul(cm));
            }
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(DualWord, QMonomial), &RatFunc)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, w: DualWord, m: QMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((w, m)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &DoubleElement) -> DoubleElement {
        let mut out = self.clone();
        for ((w, m), c) in &other.terms {
            out.add_term(w.clone(), m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DoubleElement) -> DoubleElement {
        let mut out = self.clone();
        for ((w, m), c) in &other.terms {
            out.add_term(w.clone(), m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> DoubleElement {
        let mut out = DoubleElement::zero(self.n());
        for ((w, m), k) in &self.terms {
            out.add_term(w.clone(), m.clone(), k.mul(c));
        }
        out
    }

    /// Group the terms by their monomial leg.
    pub fn by_monomial(&self) -> BTreeMap<QMonomial, DualElement> {
        let mut out: BTreeMap<QMonomial, DualElement> = BTreeMap::new();
        for ((w, m), c) in &self.terms {
            out.entry(m.clone())
                .or_insert_with(|| DualElement::zero(self.n()))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Bring every monomial leg to the same power of `D` by multiplying in
    /// expanded powers of the quantum determinant.
    pub fn normalize_det(&self, ctx: &QzContext) -> DoubleElement {
        let top = self
            .terms
            .keys()
            .map(|(_, m)| m.det_pow)
            .max()
            .unwrap_or(0);
        let mut out = DoubleElement::zero(self.n());
        for ((w, m), c) in &self.terms {
            if m.det_pow == top {
                out.add_term(w.clone(), m.clone(), c.clone());
                continue;
            }
            let lift = qmatrix::detq_pow(ctx, (top - m.det_pow) as u32);
            let base = qmatrix::normal_form(ctx, c.clone(), top, &m.word).expect("valid");
            let lifted = qmatrix::multiply(ctx, &base, &lift).expect("same context");
            for (m2, c2) in lifted.terms() {
                out.add_term(w.clone(), m2.clone(), c2.clone());
            }
        }
        out
    }
}

impl fmt::Display for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((w, m), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word = if w.is_empty() {
                "eps".to_string()
            } else {
                w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
            };
            let coeff = c.to_string();
            if coeff == "1" {
                write!(f, "{word} (x) {m}")?;
            } else if coeff.contains(' ') || coeff.contains('/') || coeff.starts_with('-') {
                write!(f, "({coeff}) * {word} (x) {m}")?;
            } else {
                write!(f, "{coeff} * {word} (x) {m}")?;
            }
        }
        Ok(())
    }
}

fn monomial_element(ctx: &QzContext, m: &QMonomial) -> QElement {
    qmatrix::normal_form(ctx, RatFunc::one(), m.det_pow, &m.word).expect("normal form monomial")
}

fn raw_leg(ctx: &QzContext, det_pow: i32, word: &[qmatrix::Gen]) -> QElement {
    qmatrix::normal_form(ctx, RatFunc::one(), det_pow, word).expect("valid leg")
}

/// Multiplication of the double: the dual word splits twice, its outer legs
/// pair against the outer legs of the monomial, and the middles multiply.
pub fn d_mul(ctx: &QzContext, a: &DoubleElement, b: &DoubleElement) -> Result<DoubleElement> {
    if a.n() != b.n() {
        return Err(Error::ContextMismatch(a.n(), b.n()));
    }
    let mut out = DoubleElement::zero(a.n());
    for ((wm, xm), ca) in &a.terms {
        let x_splits = qmatrix::monomial_splits(ctx, xm, 3);
        for ((wn, yn), cb) in &b.terms {
            let c = ca.mul(cb);
            let n_splits = functionals::word_comul_n(wn, 3);
            for xs in &x_splits {
                let x1 = raw_leg(ctx, xm.det_pow, &xs[0]);
                let x2 = raw_leg(ctx, 0, &xs[1]);
                let x3 = raw_leg(ctx, xm.det_pow, &xs[2]);
                let x3inv = qmatrix::antipode_inv(ctx, &x3);
                for ns in &n_splits {
                    let p1 = functionals::eval(ctx, &DualElement::word(a.n(), ns[2].clone()), &x1)?;
                    if p1.is_zero() {
                        continue;
                    }
                    let p2 =
                        functionals::eval(ctx, &DualElement::word(a.n(), ns[0].clone()), &x3inv)?;
                    if p2.is_zero() {
                        continue;
                    }
                    // m * n_2 is word concatenation
                    let mut w = wm.clone();
                    w.extend_from_slice(&ns[1]);
                    // x_2 * y in the algebra
                    let y = monomial_element(ctx, yn);
                    let mid = qmatrix::multiply(ctx, &x2, &y)?;
                    let scale = c.mul(&p1).mul(&p2);
                    for (m2, c2) in mid.terms() {
                        let mut m2 = m2.clone();
                        m2.det_pow += xm.det_pow;
                        out.add_term(w.clone(), m2, scale.mul(c2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Sum of tensor squares of double elements.
pub type DoubleTensor = BTreeMap<((DualWord, QMonomial), (DualWord, QMonomial)), RatFunc>;

/// Comultiplication: tensor coalgebra with co-opposite dual legs.
pub fn d_comul(ctx: &QzContext, a: &DoubleElement) -> DoubleTensor {
    let mut out = DoubleTensor::new();
    for ((w, m), c) in &a.terms {
        let w_splits = functionals::word_comul_n(w, 2);
        for ws in &w_splits {
            for legs in qmatrix::monomial_splits(ctx, m, 2) {
                let left = raw_leg(ctx, m.det_pow, &legs[0]);
                let right = raw_leg(ctx, m.det_pow, &legs[1]);
                for (m1, c1) in left.terms() {
                    for (m2, c2) in right.terms() {
                        let key = (
                            (ws[1].clone(), m1.clone()),
                            (ws[0].clone(), m2.clone()),
                        );
                        let v = c.mul(c1).mul(c2);
                        let entry = out.entry(key).or_insert_with(RatFunc::zero);
                        *entry = entry.add(&v);
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn d_counit(ctx: &QzContext, a: &DoubleElement) -> RatFunc {
    let _ = ctx;
    let mut out = RatFunc::zero();
    for ((w, m), c) in &a.terms {
        let f = functionals::dual_counit(&DualElement::word(a.n(), w.clone()));
        if f.is_zero() {
            continue;
        }
        if m.word.iter().all(|g| g.row == g.col) {
            out = out.add(&f.mul(c));
        }
    }
    out
}

/// Antipode of the double.
pub fn d_antipode(ctx: &QzContext, a: &DoubleElement) -> Result<DoubleElement> {
    let mut out = DoubleElement::zero(a.n());
    for ((w, m), c) in &a.terms {
        let w_splits = functionals::word_comul_n(w, 3);
        for legs in qmatrix::monomial_splits(ctx, m, 3) {
            let x1 = raw_leg(ctx, m.det_pow, &legs[0]);
            let x2 = raw_leg(ctx, m.det_pow, &legs[1]);
            let x3 = raw_leg(ctx, m.det_pow, &legs[2]);
            let x1inv = qmatrix::antipode_inv(ctx, &x1);
            let sx2 = qmatrix::antipode(ctx, &x2);
            for ws in &w_splits {
                let p1 = functionals::eval(ctx, &DualElement::word(a.n(), ws[0].clone()), &x3)?;
                if p1.is_zero() {
                    continue;
                }
                let p2 = functionals::eval(ctx, &DualElement::word(a.n(), ws[2].clone()), &x1inv)?;
                if p2.is_zero() {
                    continue;
                }
                let sm2 = functionals::dual_antipode_inv(ctx, &DualElement::word(a.n(), ws[1].clone()));
                let scale = c.mul(&p1).mul(&p2);
                for (wv, cv) in sm2.terms() {
                    for (m2, c2) in sx2.terms() {
                        out.add_term(wv.clone(), m2.clone(), scale.mul(cv).mul(c2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The splitting morphism into the dual factor: `y -> l_{S^{-1}(y)}`,
/// multiplicative because `l` is anti-multiplicative.
pub fn gamma_map(ctx: &QzContext, y: &QElement) -> DualElement {
    functionals::l_of(ctx, &qmatrix::antipode_inv(ctx, y))
}

/// The projection of the double onto its dual factor: `F (x) y -> F * gamma(y)`.
pub fn pi_project(ctx: &QzContext, a: &DoubleElement) -> Result<DualElement> {
    let mut out = DualElement::zero(a.n());
    for ((w, m), c) in &a.terms {
        let g = gamma_map(ctx, &monomial_element(ctx, m));
        let f = dual_mul(&DualElement::word(a.n(), w.clone()), &g)?;
        out = out.add(&f.scale(c));
    }
    Ok(out)
}

/// The splitting condition: `gamma(y) F` must equal
/// `<F_1, S^{-1}(y_3)> <F_3, y_1> F_2 gamma(y_2)` as functionals up to
/// degree `d`.
pub fn check_gamma_condition(
    ctx: &QzContext,
    y: &QElement,
    f: &DualElement,
    d: usize,
) -> Result<Option<FunctionalWitness>> {
    let lhs = dual_mul(&gamma_map(ctx, y), f)?;
    let mut rhs = DualElement::zero(ctx.n());
    for (m, cm) in y.terms() {
        for legs in qmatrix::monomial_splits(ctx, m, 3) {
            let y1 = raw_leg(ctx, m.det_pow, &legs[0]);
            let y2 = raw_leg(ctx, m.det_pow, &legs[1]);
            let y3 = raw_leg(ctx, m.det_pow, &legs[2]);
            let y3inv = qmatrix::antipode_inv(ctx, &y3);
            let gy2 = gamma_map(ctx, &y2);
            for (w, cw) in f.terms() {
                for ws in functionals::word_comul_n(w, 3) {
                    let p1 = functionals::eval(ctx, &DualElement::word(ctx.n(), ws[0].clone()), &y3inv)?;
                    if p1.is_zero() {
                        continue;
                    }
                    let p2 = functionals::eval(ctx, &DualElement::word(ctx.n(), ws[2].clone()), &y1)?;
                    if p2.is_zero() {
                        continue;
                    }
                    let mid = dual_mul(&DualElement::word(ctx.n(), ws[1].clone()), &gy2)?;
                    rhs = rhs.add(&mid.scale(&cm.mul(cw).mul(&p1).mul(&p2)));
                }
            }
        }
    }
    functionals::functional_equal_upto(ctx, &lhs, &rhs, d)
}

/// Variant of the splitting condition:
/// `<F_1, y_2> gamma(y_1) F_2 = <F_2, y_1> F_1 gamma(y_2)`.
pub fn check_gamma_prime(
    ctx: &QzContext,
    y: &QElement,
    f: &DualElement,
    d: usize,
) -> Result<Option<FunctionalWitness>> {
    let mut lhs = DualElement::zero(ctx.n());
    let mut rhs = DualElement::zero(ctx.n());
    for (m, cm) in y.terms() {
        for legs in qmatrix::monomial_splits(ctx, m, 2) {
            let y1 = raw_leg(ctx, m.det_pow, &legs[0]);
            let y2 = raw_leg(ctx, m.det_pow, &legs[1]);
            for (w, cw) in f.terms() {
                for ws in functionals::word_comul_n(w, 2) {
                    let f1 = DualElement::word(ctx.n(), ws[0].clone());
                    let f2 = DualElement::word(ctx.n(), ws[1].clone());
                    let c = cm.mul(cw);
                    let p = functionals::eval(ctx, &f1, &y2)?;
                    if !p.is_zero() {
                        let t = dual_mul(&gamma_map(ctx, &y1), &f2)?;
                        lhs = lhs.add(&t.scale(&c.mul(&p)));
                    }
                    let p = functionals::eval(ctx, &f2, &y1)?;
                    if !p.is_zero() {
                        let t = dual_mul(&f1, &gamma_map(ctx, &y2))?;
                        rhs = rhs.add(&t.scale(&c.mul(&p)));
                    }
                }
            }
        }
    }
    functionals::functional_equal_upto(ctx, &lhs, &rhs, d)
}

/// The condition restricted to the image of the splitting morphism:
/// `<gamma(x_2), y_2> gamma(y_1) gamma(x_1) = <gamma(x_1), y_1> gamma(x_2) gamma(y_2)`.
pub fn check_gamma_gamma(
    ctx: &QzContext,
    x: &QElement,
    y: &QElement,
    d: usize,
) -> Result<Option<FunctionalWitness>> {
    let mut lhs = DualElement::zero(ctx.n());
    let mut rhs = DualElement::zero(ctx.n());
    for (mx, cx) in x.terms() {
        for xlegs in qmatrix::monomial_splits(ctx, mx, 2) {
            let x1 = raw_leg(ctx, mx.det_pow, &xlegs[0]);
            let x2 = raw_leg(ctx, mx.det_pow, &xlegs[1]);
            for (my, cy) in y.terms() {
                for ylegs in qmatrix::monomial_splits(ctx, my, 2) {
                    let y1 = raw_leg(ctx, my.det_pow, &ylegs[0]);
                    let y2 = raw_leg(ctx, my.det_pow, &ylegs[1]);
                    let c = cx.mul(cy);
                    let p = functionals::eval(ctx, &gamma_map(ctx, &x2), &y2)?;
                    if !p.is_zero() {
                        let t = dual_mul(&gamma_map(ctx, &y1), &gamma_map(ctx, &x1))?;
                        lhs = lhs.add(&t.scale(&c.mul(&p)));
                    }
                    let p = functionals::eval(ctx, &gamma_map(ctx, &x1), &y1)?;
                    if !p.is_zero() {
                        let t = dual_mul(&gamma_map(ctx, &x2), &gamma_map(ctx, &y2))?;
                        rhs = rhs.add(&t.scale(&c.mul(&p)));
                    }
                }
            }
        }
    }
    functionals::functional_equal_upto(ctx, &lhs, &rhs, d)
}

/// Semantic equality of double elements: group by the monomial leg after
/// normalizing determinant powers, then compare the dual legs by bounded
/// evaluation.
pub fn double_equal_upto(
    ctx: &QzContext,
    a: &DoubleElement,
    b: &DoubleElement,
    d: usize,
) -> Result<Option<String>> {
    let an = a.normalize_det(ctx);
    let bn = b.normalize_det(ctx);
    // Renormalize to a common det power if the two tops differ.
    let ta = an.terms.keys().map(|(_, m)| m.det_pow).max().unwrap_or(0);
    let tb = bn.terms.keys().map(|(_, m)| m.det_pow).max().unwrap_or(0);
    let top = ta.max(tb);
    let lift = |e: &DoubleElement, from: i32| -> DoubleElement {
        if from == top || e.is_zero() {
            e.clone()
        } else {
            let mut shifted = DoubleElement::zero(e.n());
            let lift = qmatrix::detq_pow(ctx, (top - from) as u32);
            for ((w, m), c) in &e.terms {
                let base = qmatrix::normal_form(ctx, c.clone(), top, &m.word).expect("valid");
                let lifted = qmatrix::multiply(ctx, &base, &lift).expect("same context");
                for (m2, c2) in lifted.terms() {
                    shifted.add_term(w.clone(), m2.clone(), c2.clone());
                }
            }
            shifted
        }
    };
    let an = lift(&an, ta);
    let bn = lift(&bn, tb);
    let ga = an.by_monomial();
    let gb = bn.by_monomial();
    let keys: std::collections::BTreeSet<_> = ga.keys().chain(gb.keys()).cloned().collect();
    let zero = DualElement::zero(a.n());
    for k in keys {
        let fa = ga.get(&k).unwrap_or(&zero);
        let fb = gb.get(&k).unwrap_or(&zero);
        if let Some(w) = functionals::functional_equal_upto(ctx, fa, fb, d)? {
            return Ok(Some(format!("monomial leg {k}: dual legs differ {w}")));
        }
    }
    Ok(None)
}

/// Element of the double of the algebra with itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhDoubleElement {
    n: u8,
    terms: BTreeMap<(QMonomial, QMonomial), RatFunc>,
}

impl HhDoubleElement {
    pub fn zero(n: usize) -> Self {
        HhDoubleElement {
            n: n as u8,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut e = HhDoubleElement::zero(n);
        e.add_term(QMonomial::unit(), QMonomial::unit(), RatFunc::one());
        e
    }

    pub fn tensor(a: &QElement, b: &QElement) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::ContextMismatch(a.n(), b.n()));
        }
        let mut e = HhDoubleElement::zero(a.n());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                e.add_term(ma.clone(), mb.clone(), ca.mul(cb));
            }
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(QMonomial, QMonomial), &RatFunc)> {
        self.terms.iter()
    }

    fn add_term(&mut self, a: QMonomial, b: QMonomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &HhDoubleElement) -> HhDoubleElement {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> HhDoubleElement {
        let mut out = HhDoubleElement::zero(self.n());
        for ((a, b), k) in &self.terms {
            out.add_term(a.clone(), b.clone(), k.mul(c));
        }
        out
    }
}

impl fmt::Display for HhDoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = c.to_string();
            if coeff == "1" {
                write!(f, "{a} (x) {b}")?;
            } else {
                write!(f, "({coeff}) * {a} (x) {b}")?;
            }
        }
        Ok(())
    }
}

/// Multiplication twisted by the pairing:
/// `(b (x) h)(b' (x) h') = sigma(b'_1, h_1) sigma^{-1}(b'_3, h_3) b b'_2 (x) h_2 h'`.
pub fn hh_mul(
    ctx: &QzContext,
    a: &HhDoubleElement,
    b: &HhDoubleElement,
) -> Result<HhDoubleElement> {
    if a.n() != b.n() {
        return Err(Error::ContextMismatch(a.n(), b.n()));
    }
    let mut out = HhDoubleElement::zero(a.n());
    for ((ba, ha), ca) in &a.terms {
        let h_splits = qmatrix::monomial_splits(ctx, ha, 3);
        for ((bb, hb), cb) in &b.terms {
            let c = ca.mul(cb);
            let b_splits = qmatrix::monomial_splits(ctx, bb, 3);
            for hs in &h_splits {
                let h1 = raw_leg(ctx, ha.det_pow, &hs[0]);
                let h2 = raw_leg(ctx, 0, &hs[1]);
                let h3 = raw_leg(ctx, ha.det_pow, &hs[2]);
                for bs in &b_splits {
                    let b1 = raw_leg(ctx, bb.det_pow, &bs[0]);
                    let b2 = raw_leg(ctx, 0, &bs[1]);
                    let b3 = raw_leg(ctx, bb.det_pow, &bs[2]);
                    let p1 = sigma::sigma_eval(ctx, &b1, &h1, Sign::Plus)?;
                    if p1.is_zero() {
                        continue;
                    }
                    let p2 = sigma::sigma_eval(ctx, &b3, &h3, Sign::Minus)?;
                    if p2.is_zero() {
                        continue;
                    }
                    let left = qmatrix::multiply(ctx, &monomial_element(ctx, ba), &b2)?;
                    let right = qmatrix::multiply(ctx, &h2, &monomial_element(ctx, hb))?;
                    let scale = c.mul(&p1).mul(&p2);
                    for (ml, cl) in left.terms() {
                        let mut ml = ml.clone();
                        ml.det_pow += bb.det_pow;
                        for (mr, cr) in right.terms() {
                            let mut mr = mr.clone();
                            mr.det_pow += ha.det_pow;
                            out.add_term(ml.clone(), mr, scale.mul(cl).mul(cr));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Sum of tensor squares of elements of the self-double.
pub type HhDoubleTensor = BTreeMap<((QMonomial, QMonomial), (QMonomial, QMonomial)), RatFunc>;

/// Tensor-coalgebra comultiplication of the self-double.
pub fn hh_comul(ctx: &QzContext, a: &HhDoubleElement) -> HhDoubleTensor {
    let mut out = HhDoubleTensor::new();
    for ((b, h), c) in &a.terms {
        for bl in qmatrix::monomial_splits(ctx, b, 2) {
            let b1 = raw_leg(ctx, b.det_pow, &bl[0]);
            let b2 = raw_leg(ctx, b.det_pow, &bl[1]);
            for hl in qmatrix::monomial_splits(ctx, h, 2) {
                let h1 = raw_leg(ctx, h.det_pow, &hl[0]);
                let h2 = raw_leg(ctx, h.det_pow, &hl[1]);
                for (mb1, cb1) in b1.terms() {
                    for (mb2, cb2) in b2.terms() {
                        for (mh1, ch1) in h1.terms() {
                            for (mh2, ch2) in h2.terms() {
                                let key = (
                                    (mb1.clone(), mh1.clone()),
                                    (mb2.clone(), mh2.clone()),
                                );
                                let v = c.mul(cb1).mul(cb2).mul(ch1).mul(ch2);
                                let e = out.entry(key).or_insert_with(RatFunc::zero);
                                *e = e.add(&v);
                            }
                        }
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The multiplication projection of the self-double: `h (x) l -> h l`.
pub fn mult_projection(ctx: &QzContext, a: &HhDoubleElement) -> Result<QElement> {
    let mut out = QElement::zero(a.n());
    for ((b, h), c) in &a.terms {
        let prod = qmatrix::multiply(ctx, &monomial_element(ctx, b), &monomial_element(ctx, h))?;
        out = out.add(&prod.scale(c));
    }
    Ok(out)
}

/// The bilinear form making the self-double coquasitriangular:
/// `omega(b (x) h, b' (x) h') =
///  sigma(b_1, h'_1) sigma(b_2, b'_1) sigma(h_1, h'_2) sigma(S(b'_2), h_2)`.
pub fn omega_eval(
    ctx: &QzContext,
    a: &HhDoubleElement,
    b: &HhDoubleElement,
) -> Result<RatFunc> {
    if a.n() != b.n() {
        return Err(Error::ContextMismatch(a.n(), b.n()));
    }
    let mut out = RatFunc::zero();
    for ((ba, ha), ca) in &a.terms {
        for ((bb, hb), cb) in &b.terms {
            let c = ca.mul(cb);
            for bsa in qmatrix::monomial_splits(ctx, ba, 2) {
                let ba1 = raw_leg(ctx, ba.det_pow, &bsa[0]);
                let ba2 = raw_leg(ctx, ba.det_pow, &bsa[1]);
                for hsa in qmatrix::monomial_splits(ctx, ha, 2) {
                    let ha1 = raw_leg(ctx, ha.det_pow, &hsa[0]);
                    let ha2 = raw_leg(ctx, ha.det_pow, &hsa[1]);
                    for bsb in qmatrix::monomial_splits(ctx, bb, 2) {
                        let bb1 = raw_leg(ctx, bb.det_pow, &bsb[0]);
                        let bb2 = raw_leg(ctx, bb.det_pow, &bsb[1]);
                        for hsb in qmatrix::monomial_splits(ctx, hb, 2) {
                            let hb1 = raw_leg(ctx, hb.det_pow, &hsb[0]);
                            let hb2 = raw_leg(ctx, hb.det_pow, &hsb[1]);
                            let p1 = sigma::sigma_eval(ctx, &ba1, &hb1, Sign::Plus)?;
                            if p1.is_zero() {
                                continue;
                            }
                            let p2 = sigma::sigma_eval(ctx, &ba2, &bb1, Sign::Plus)?;
                            if p2.is_zero() {
                                continue;
                            }
                            let p3 = sigma::sigma_eval(ctx, &ha1, &hb2, Sign::Plus)?;
                            if p3.is_zero() {
                                continue;
                            }
                            let p4 = sigma::sigma_twisted(ctx, &bb2, 1, &ha2, 0, Sign::Plus)?;
                            if p4.is_zero() {
                                continue;
                            }
                            out = out.add(&c.mul(&p1).mul(&p2).mul(&p3).mul(&p4));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{named_generator, NamedGenerator};

    fn ctx2() -> QzContext {
        QzContext::new(2).unwrap()
    }

    fn gen(ctx: &QzContext, r: usize, c: usize) -> QElement {
        QElement::generator(ctx, r, c).unwrap()
    }

    fn named(ctx: &QzContext, g: NamedGenerator) -> DualElement {
        named_generator(ctx, g).unwrap()
    }

    #[test]
    fn unit_of_double() {
        let ctx = ctx2();
        let e1 = named(&ctx, NamedGenerator::E(1));
        let f = DoubleElement::tensor(&e1, &gen(&ctx, 1, 2)).unwrap();
        let one = DoubleElement::one(2);
        assert_eq!(d_mul(&ctx, &one, &f).unwrap(), f);
        assert_eq!(d_mul(&ctx, &f, &one).unwrap(), f);
    }

    #[test]
    fn dual_factor_multiplies_by_concatenation() {
        let ctx = ctx2();
        let k = named(&ctx, NamedGenerator::KHat(1));
        let e = named(&ctx, NamedGenerator::E(1));
        let a = DoubleElement::from_dual(&k);
        let b = DoubleElement::from_dual(&e);
        let prod = d_mul(&ctx, &a, &b).unwrap();
        let expect = DoubleElement::from_dual(&dual_mul(&k, &e).unwrap());
        assert_eq!(prod, expect);
    }

    #[test]
    fn associativity_on_sample_triple() {
        let ctx = ctx2();
        let a = DoubleElement::tensor(&named(&ctx, NamedGenerator::KHat(1)), &gen(&ctx, 1, 1))
            .unwrap();
        let b = DoubleElement::tensor(&named(&ctx, NamedGenerator::E(1)), &gen(&ctx, 1, 2))
            .unwrap();
        let c = DoubleElement::from_algebra(&gen(&ctx, 2, 1));
        let ab_c = d_mul(&ctx, &d_mul(&ctx, &a, &b).unwrap(), &c).unwrap();
        let a_bc = d_mul(&ctx, &a, &d_mul(&ctx, &b, &c).unwrap()).unwrap();
        let w = double_equal_upto(&ctx, &ab_c, &a_bc, 3).unwrap();
        assert!(w.is_none(), "associativity witness: {w:?}");
    }

    #[test]
    fn comultiplication_of_algebra_leg() {
        // Delta(eps (x) x12) = sum_k (eps (x) x1k) (x) (eps (x) xk2)
        let ctx = ctx2();
        let a = DoubleElement::from_algebra(&gen(&ctx, 1, 2));
        let t = d_comul(&ctx, &a);
        let mut expect = DoubleTensor::new();
        for k in 1..=2usize {
            expect.insert(
                (
                    (Vec::new(), QMonomial::gen(crate::qmatrix::Gen::new(1, k))),
                    (Vec::new(), QMonomial::gen(crate::qmatrix::Gen::new(k, 2))),
                ),
                RatFunc::one(),
            );
        }
        assert_eq!(t, expect);
    }

    #[test]
    fn counit_and_unit_comultiply() {
        let ctx = ctx2();
        let one = DoubleElement::one(2);
        let t = d_comul(&ctx, &one);
        assert_eq!(t.len(), 1);
        assert!(d_counit(&ctx, &one).is_one());
    }

    #[test]
    fn antipode_of_grouplike_dual_leg() {
        // S(Khat_1 (x) 1) pairs like Khat_1^{-1} (x) 1
        let ctx = ctx2();
        let k = DoubleElement::from_dual(&named(&ctx, NamedGenerator::KHat(1)));
        let s = d_antipode(&ctx, &k).unwrap();
        let kinv = DoubleElement::from_dual(&named(&ctx, NamedGenerator::KHatInv(1)));
        let w = double_equal_upto(&ctx, &s, &kinv, 3).unwrap();
        assert!(w.is_none(), "witness: {w:?}");
    }

    #[test]
    fn antipode_axiom_on_algebra_leg() {
        // m (S (x) id) Delta(eps (x) x11) = eps(x11) * unit
        let ctx = ctx2();
        let a = DoubleElement::from_algebra(&gen(&ctx, 1, 1));
        let mut acc = DoubleElement::zero(2);
        for (((w1, m1), (w2, m2)), c) in d_comul(&ctx, &a) {
            let l = DoubleElement::tensor(
                &DualElement::word(2, w1),
                &monomial_element(&ctx, &m1),
            )
            .unwrap();
            let r = DoubleElement::tensor(
                &DualElement::word(2, w2),
                &monomial_element(&ctx, &m2),
            )
            .unwrap();
            let sl = d_antipode(&ctx, &l).unwrap();
            acc = acc.add(&d_mul(&ctx, &sl, &r).unwrap().scale(&c));
        }
        let expect = DoubleElement::zero(2); // eps(x11) = 1, so expect the unit
        let expect = expect.add(&DoubleElement::one(2));
        let w = double_equal_upto(&ctx, &acc, &expect, 2).unwrap();
        assert!(w.is_none(), "witness: {w:?}");
    }

    #[test]
    fn gamma_is_multiplicative() {
        let ctx = ctx2();
        // gamma(1) = eps
        assert_eq!(gamma_map(&ctx, &QElement::one(2)), DualElement::one(2));
        // gamma(xy) = gamma(x) gamma(y) as functionals
        let x = gen(&ctx, 1, 1);
        let y = gen(&ctx, 1, 2);
        let xy = qmatrix::multiply(&ctx, &x, &y).unwrap();
        let lhs = gamma_map(&ctx, &xy);
        let rhs = dual_mul(&gamma_map(&ctx, &x), &gamma_map(&ctx, &y)).unwrap();
        assert!(functionals::functional_equal_upto(&ctx, &lhs, &rhs, 3)
            .unwrap()
            .is_none());
    }

    #[test]
    fn gamma_pairs_as_inverse_pairing() {
        // <gamma(a), b> = sigma^{-1}(b, a) on generator pairs
        let ctx = ctx2();
        for i in 1..=2 {
            for j in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        let a = gen(&ctx, i, j);
                        let b = gen(&ctx, k, l);
                        let lhs = functionals::eval(&ctx, &gamma_map(&ctx, &a), &b).unwrap();
                        let rhs = sigma::sigma_eval(&ctx, &b, &a, Sign::Minus).unwrap();
                        assert_eq!(lhs, rhs, "at ({i},{j}),({k},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_condition_holds() {
        let ctx = ctx2();
        let y = gen(&ctx, 1, 1);
        let f = DualElement::letter(2, crate::functionals::DualLetter::l(2, 1, 1).unwrap());
        assert!(check_gamma_condition(&ctx, &y, &f, 2).unwrap().is_none());
        let y = gen(&ctx, 1, 2);
        let f = DualElement::letter(2, crate::functionals::DualLetter::r(2, 1, 2).unwrap());
        assert!(check_gamma_condition(&ctx, &y, &f, 2).unwrap().is_none());
        // trivial case y = 1
        let y = QElement::one(2);
        let f = named(&ctx, NamedGenerator::E(1));
        assert!(check_gamma_condition(&ctx, &y, &f, 2).unwrap().is_none());
    }

    #[test]
    fn projection_splits_inclusion() {
        let ctx = ctx2();
        for g in [
            NamedGenerator::KHat(1),
            NamedGenerator::E(1),
            NamedGenerator::F(1),
        ] {
            let f = named(&ctx, g);
            let emb = DoubleElement::from_dual(&f);
            let back = pi_project(&ctx, &emb).unwrap();
            assert_eq!(back, f, "pi o i != id on {f}");
        }
        // pi(eps (x) x11) = gamma(x11)
        let a = DoubleElement::from_algebra(&gen(&ctx, 1, 1));
        assert_eq!(
            pi_project(&ctx, &a).unwrap(),
            gamma_map(&ctx, &gen(&ctx, 1, 1))
        );
    }

    #[test]
    fn projection_is_multiplicative_on_samples() {
        let ctx = ctx2();
        let a = DoubleElement::from_algebra(&gen(&ctx, 1, 1));
        let b = DoubleElement::tensor(&named(&ctx, NamedGenerator::KHat(1)), &gen(&ctx, 1, 2))
            .unwrap();
        let lhs = pi_project(&ctx, &d_mul(&ctx, &a, &b).unwrap()).unwrap();
        let rhs = dual_mul(
            &pi_project(&ctx, &a).unwrap(),
            &pi_project(&ctx, &b).unwrap(),
        )
        .unwrap();
        let w = functionals::functional_equal_upto(&ctx, &lhs, &rhs, 3).unwrap();
        assert!(w.is_none(), "witness: {:?}", w.map(|x| x.to_string()));
    }

    #[test]
    fn mult_projection_examples() {
        let ctx = ctx2();
        // pi'(x11 (x) x12) = x11 x12
        let a = HhDoubleElement::tensor(&gen(&ctx, 1, 1), &gen(&ctx, 1, 2)).unwrap();
        let got = mult_projection(&ctx, &a).unwrap();
        let expect = qmatrix::multiply(&ctx, &gen(&ctx, 1, 1), &gen(&ctx, 1, 2)).unwrap();
        assert_eq!(got, expect);
        // pi'((1 (x) y)(m (x) 1)) = y m for y = x12, m = x21
        let y = gen(&ctx, 1, 2);
        let m = gen(&ctx, 2, 1);
        let ly = HhDoubleElement::tensor(&QElement::one(2), &y).unwrap();
        let rm = HhDoubleElement::tensor(&m, &QElement::one(2)).unwrap();
        let prod = hh_mul(&ctx, &ly, &rm).unwrap();
        let got = mult_projection(&ctx, &prod).unwrap();
        let expect = qmatrix::multiply(&ctx, &y, &m).unwrap();
        assert_eq!(got, expect);
        // pi'(1 (x) 1) = 1
        assert_eq!(
            mult_projection(&ctx, &HhDoubleElement::one(2)).unwrap(),
            QElement::one(2)
        );
    }

    #[test]
    fn mult_projection_is_algebra_map() {
        let ctx = ctx2();
        for (i, j, k, l) in [(1, 1, 1, 2), (1, 2, 2, 1), (2, 1, 2, 2)] {
            let a = HhDoubleElement::tensor(&gen(&ctx, i, j), &gen(&ctx, k, l)).unwrap();
            let b = HhDoubleElement::tensor(&gen(&ctx, 2, 2), &gen(&ctx, 1, 1)).unwrap();
            let lhs = mult_projection(&ctx, &hh_mul(&ctx, &a, &b).unwrap()).unwrap();
            let rhs = qmatrix::multiply(
                &ctx,
                &mult_projection(&ctx, &a).unwrap(),
                &mult_projection(&ctx, &b).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, rhs, "at ({i},{j},{k},{l})");
        }
    }

    #[test]
    fn omega_basic_values() {
        let ctx = ctx2();
        let one = HhDoubleElement::one(2);
        assert!(omega_eval(&ctx, &one, &one).unwrap().is_one());
        // omega(x11 (x) 1, 1 (x) x11) reduces to a single pairing product
        let a = HhDoubleElement::tensor(&gen(&ctx, 1, 1), &QElement::one(2)).unwrap();
        let b = HhDoubleElement::tensor(&QElement::one(2), &gen(&ctx, 1, 1)).unwrap();
        let got = omega_eval(&ctx, &a, &b).unwrap();
        // = sigma(b_1, h'_1) with all other legs collapsing through counits
        let expect = sigma::sigma_eval(&ctx, &gen(&ctx, 1, 1), &gen(&ctx, 1, 1), Sign::Plus)
            .unwrap();
        assert_eq!(got, expect);
    }
}
