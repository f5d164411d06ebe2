//! Shared evaluation tables.
//!
//! Functionals are evaluated against PBW monomials degree by degree: a basis
//! of sorted words per degree, the coproduct structure constants over that
//! basis, transfer tables for single pairing letters, and cached value
//! vectors for whole letter words. Everything is computed lazily per context
//! and shared; concurrent fills are idempotent.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;

use crate::qmatrix::{self, Gen, QElement, QMonomial};
use crate::scalar::{QzContext, RatFunc};
use crate::sigma::{self, Sign};

/// Internal pairing letter. Unlike the public dual-generator alphabet this
/// one allows arbitrary index pairs; values of letters that vanish
/// identically come out as zero from the transfer recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum EngineLetter {
    /// pairing against `x[i,j]` on the right: `h -> sigma(h, x[i,j])`
    L(u8, u8),
    /// pairing against `x[i,j]` on the left: `h -> sigma(x[i,j], h)`
    R(u8, u8),
    /// `h -> sigma^{-1}(h, x[i,i])` relative to the ambient sign
    LInvDiag(u8),
    /// `h -> sigma^{-1}(x[i,i], h)` relative to the ambient sign
    RInvDiag(u8),
}

type WordValueCache = HashMap<(Vec<EngineLetter>, usize, Sign), Arc<Vec<RatFunc>>>;

#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) detq: OnceLock<QElement>,
    pub(crate) minors: RwLock<HashMap<(u8, u8), QElement>>,
    pub(crate) antipode_gen: RwLock<HashMap<Gen, QElement>>,
    basis: RwLock<HashMap<usize, Arc<MonomialBasis>>>,
    coproduct: RwLock<HashMap<usize, Arc<CoproductTable>>>,
    lr: RwLock<HashMap<(usize, Sign), Arc<LrTable>>>,
    word_values: RwLock<WordValueCache>,
}

/// All sorted words of a fixed degree, in lexicographic order.
pub(crate) struct MonomialBasis {
    pub monos: Vec<Vec<Gen>>,
    pub index: HashMap<Vec<Gen>, usize>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn position(&self, word: &[Gen]) -> Option<usize> {
        self.index.get(word).copied()
    }
}

/// Coproduct structure constants over a degree layer: for each basis
/// monomial, the collected list of (left index, right index, coefficient).
pub(crate) struct CoproductTable {
    pub entries: Vec<Vec<(usize, usize, RatFunc)>>,
}

/// Transfer tables for single letters at one degree and sign:
/// `l[m][i][j] = sigma(mono_m, x[i,j])` and `r[m][i][j] = sigma(x[i,j], mono_m)`.
pub(crate) struct LrTable {
    n: usize,
    l: Vec<RatFunc>,
    r: Vec<RatFunc>,
}

impl LrTable {
    #[inline]
    fn idx(&self, m: usize, i: usize, j: usize) -> usize {
        (m * self.n + (i - 1)) * self.n + (j - 1)
    }

    pub fn l_value(&self, m: usize, i: usize, j: usize) -> &RatFunc {
        &self.l[self.idx(m, i, j)]
    }

    pub fn r_value(&self, m: usize, i: usize, j: usize) -> &RatFunc {
        &self.r[self.idx(m, i, j)]
    }
}

pub(crate) fn basis(ctx: &QzContext, deg: usize) -> Arc<MonomialBasis> {
    if let Some(b) = ctx.caches.basis.read().unwrap().get(&deg) {
        return b.clone();
    }
    let n = ctx.n();
    let alphabet: Vec<Gen> = (1..=n)
        .cartesian_product(1..=n)
        .map(|(r, c)| Gen::new(r, c))
        .collect();
    let monos: Vec<Vec<Gen>> = if deg == 0 {
        vec![Vec::new()]
    } else {
        alphabet
            .iter()
            .copied()
            .combinations_with_replacement(deg)
            .collect()
    };
    let index = monos
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let b = Arc::new(MonomialBasis { monos, index });
    ctx.caches
        .basis
        .write()
        .unwrap()
        .entry(deg)
        .or_insert_with(|| b.clone())
        .clone()
}

pub(crate) fn coproduct(ctx: &QzContext, deg: usize) -> Arc<CoproductTable> {
    if let Some(t) = ctx.caches.coproduct.read().unwrap().get(&deg) {
        return t.clone();
    }
    let n = ctx.n();
    let b = basis(ctx, deg);
    let mut entries = Vec::with_capacity(b.len());
    for word in &b.monos {
        let mut collected: HashMap<(usize, usize), RatFunc> = HashMap::new();
        let paths: Vec<Vec<usize>> = if deg == 0 {
            vec![Vec::new()]
        } else {
            (0..deg)
                .map(|_| 1..=n)
                .multi_cartesian_product()
                .collect()
        };
        for path in paths {
            let left_raw: Vec<Gen> = word
                .iter()
                .zip(&path)
                .map(|(g, &k)| Gen::new(g.row as usize, k))
                .collect();
            let right_raw: Vec<Gen> = word
                .iter()
                .zip(&path)
                .map(|(g, &k)| Gen::new(k, g.col as usize))
                .collect();
            for (wl, cl) in qmatrix::nf_word(ctx, &left_raw) {
                let li = b.position(&wl).expect("left leg stays in degree");
                for (wr, cr) in qmatrix::nf_word(ctx, &right_raw) {
                    let ri = b.position(&wr).expect("right leg stays in degree");
                    let c = cl.mul(&cr);
                    let entry = collected.entry((li, ri)).or_insert_with(RatFunc::zero);
                    *entry = entry.add(&c);
                }
            }
        }
        let mut list: Vec<(usize, usize, RatFunc)> = collected
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((l, r), c)| (l, r, c))
            .collect();
        list.sort_by_key(|&(l, r, _)| (l, r));
        entries.push(list);
    }
    let t = Arc::new(CoproductTable { entries });
    ctx.caches
        .coproduct
        .write()
        .unwrap()
        .entry(deg)
        .or_insert_with(|| t.clone())
        .clone()
}

/// Transfer recursion for single-letter values, one degree layer at a time.
/// The two signs extend the generator table with opposite comultiplication
/// orientations, matching the convolution inverse of the pairing.
pub(crate) fn lr_table(ctx: &QzContext, deg: usize, sign: Sign) -> Arc<LrTable> {
    if let Some(t) = ctx.caches.lr.read().unwrap().get(&(deg, sign)) {
        return t.clone();
    }
    let n = ctx.n();
    let b = basis(ctx, deg);
    let mut l = vec![RatFunc::zero(); b.len() * n * n];
    let mut r = vec![RatFunc::zero(); b.len() * n * n];
    if deg == 0 {
        for i in 1..=n {
            let idx = ((i - 1) * n) + (i - 1);
            l[idx] = RatFunc::one();
            r[idx] = RatFunc::one();
        }
    } else {
        let prev_basis = basis(ctx, deg - 1);
        let prev = lr_table(ctx, deg - 1, sign);
        for (m, word) in b.monos.iter().enumerate() {
            let prefix = &word[..deg - 1];
            let last = word[deg - 1];
            let p = prev_basis.position(prefix).expect("prefix is sorted");
            for i in 1..=n {
                for j in 1..=n {
                    let mut lv = RatFunc::zero();
                    let mut rv = RatFunc::zero();
                    for c in 1..=n {
                        match sign {
                            Sign::Plus => {
                                // sigma(u*y, x_ij) = sum_c sigma(u, x_ic) sigma(y, x_cj)
                                let a = prev.l_value(p, i, c);
                                if !a.is_zero() {
                                    let t = sigma::gen_table(ctx, sign, last, Gen::new(c, j));
                                    if !t.is_zero() {
                                        lv = lv.add(&a.mul(&t));
                                    }
                                }
                                // sigma(x_ab, u*y) = sum_c sigma(x_cb, u) sigma(x_ac, y)
                                let s = prev.r_value(p, c, j);
                                if !s.is_zero() {
                                    let t = sigma::gen_table(ctx, sign, Gen::new(i, c), last);
                                    if !t.is_zero() {
                                        rv = rv.add(&s.mul(&t));
                                    }
                                }
                            }
                            Sign::Minus => {
                                // sigma^{-1}(u*y, x_ij) = sum_c sigma^{-1}(u, x_cj) sigma^{-1}(y, x_ic)
                                let a = prev.l_value(p, c, j);
                                if !a.is_zero() {
                                    let t = sigma::gen_table(ctx, sign, last, Gen::new(i, c));
                                    if !t.is_zero() {
                                        lv = lv.add(&a.mul(&t));
                                    }
                                }
                                // sigma^{-1}(x_ab, u*y) = sum_c sigma^{-1}(x_ac, u) sigma^{-1}(x_cb, y)
                                let s = prev.r_value(p, i, c);
                                if !s.is_zero() {
                                    let t = sigma::gen_table(ctx, sign, Gen::new(c, j), last);
                                    if !t.is_zero() {
                                        rv = rv.add(&s.mul(&t));
                                    }
                                }
                            }
                        }
                    }
                    let idx = (m * n + (i - 1)) * n + (j - 1);
                    l[idx] = lv;
                    r[idx] = rv;
                }
            }
        }
    }
    let t = Arc::new(LrTable { n, l, r });
    ctx.caches
        .lr
        .write()
        .unwrap()
        .entry((deg, sign))
        .or_insert_with(|| t.clone())
        .clone()
}

fn letter_values(ctx: &QzContext, letter: EngineLetter, deg: usize, sign: Sign) -> Vec<RatFunc> {
    let b = basis(ctx, deg);
    match letter {
        EngineLetter::L(i, j) => {
            let t = lr_table(ctx, deg, sign);
            (0..b.len())
                .map(|m| t.l_value(m, i as usize, j as usize).clone())
                .collect()
        }
        EngineLetter::R(i, j) => {
            let t = lr_table(ctx, deg, sign);
            (0..b.len())
                .map(|m| t.r_value(m, i as usize, j as usize).clone())
                .collect()
        }
        EngineLetter::LInvDiag(i) => {
            let t = lr_table(ctx, deg, sign.flip());
            (0..b.len())
                .map(|m| t.l_value(m, i as usize, i as usize).clone())
                .collect()
        }
        EngineLetter::RInvDiag(i) => {
            let t = lr_table(ctx, deg, sign.flip());
            (0..b.len())
                .map(|m| t.r_value(m, i as usize, i as usize).clone())
                .collect()
        }
    }
}

/// Values of a product of pairing letters against every basis monomial of
/// one degree, folding one letter at a time through the coproduct table.
pub(crate) fn word_values(
    ctx: &QzContext,
    word: &[EngineLetter],
    deg: usize,
    sign: Sign,
) -> Arc<Vec<RatFunc>> {
    let key = (word.to_vec(), deg, sign);
    if let Some(v) = ctx.caches.word_values.read().unwrap().get(&key) {
        return v.clone();
    }
    let b = basis(ctx, deg);
    let values: Vec<RatFunc> = match word.len() {
        0 => b
            .monos
            .iter()
            .map(|w| {
                if w.iter().all(|g| g.row == g.col) {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                }
            })
            .collect(),
        1 => letter_values(ctx, word[0], deg, sign),
        k => {
            let prefix = word_values(ctx, &word[..k - 1], deg, sign);
            let last = letter_values(ctx, word[k - 1], deg, sign);
            let table = coproduct(ctx, deg);
            (0..b.len())
                .map(|m| {
                    let mut acc = RatFunc::zero();
                    for (li, ri, c) in &table.entries[m] {
                        let a = &prefix[*li];
                        if a.is_zero() {
                            continue;
                        }
                        let bb = &last[*ri];
                        if bb.is_zero() {
                            continue;
                        }
                        acc = acc.add(&a.mul(bb).mul(c));
                    }
                    acc
                })
                .collect()
        }
    };
    let v = Arc::new(values);
    ctx.caches
        .word_values
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| v.clone())
        .clone()
}

/// Value of a letter word against one normal-form monomial; `D`-powers on the
/// monomial are transparent.
pub(crate) fn word_value_on(
    ctx: &QzContext,
    word: &[EngineLetter],
    mono: &QMonomial,
    sign: Sign,
) -> RatFunc {
    let deg = mono.degree();
    let b = basis(ctx, deg);
    let idx = b
        .position(&mono.word)
        .expect("monomial must be in normal form");
    word_values(ctx, word, deg, sign)[idx].clone()
}

/// All normal-form monomials of a degree, as monomials with zero `D`-power.
pub(crate) fn basis_monomials(ctx: &QzContext, deg: usize) -> Vec<QMonomial> {
    basis(ctx, deg)
        .monos
        .iter()
        .map(|w| QMonomial {
            det_pow: 0,
            word: w.clone(),
        })
        .collect()
}

impl std::fmt::Debug for Caches {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Caches").finish_non_exhaustive()
    }
}
