//! Weight spaces of the quotient algebra, with all structure operators as
//! cached matrices.
//!
//! The quotient of the free algebra by the radical of the bilinear form is
//! realized by coordinates against a pivot subset of the monomials: a
//! monomial enters the pivot set iff it increases the Gram rank, scanning
//! in the descending sequence order. The radical is never materialized;
//! every spanning monomial gets a coordinate vector over the pivots that
//! reproduces its pairings against the pivots exactly.
//!
//! Operator matrices (left/right multiplication by divided powers, left and
//! right derivations) are computed eagerly at build time. Weight spaces are
//! built level by level: all weights of one height may build in parallel
//! once the previous height is finished, and monomial pairings computed by
//! one level are frozen and shared with the next.

use crate::cartan::{enumerate_weights, CartanDatum, SequenceS, Weight};
use crate::error::{Error, Result};
use crate::free::{
    enumerate_monomials, monomial_derivative, pairing_monomials, DividedMonomial, FormalElement,
    LayeredMemo, PairMemo, Side,
};
use crate::laurent::LaurentPoly;
use crate::linalg::Mat;
use crate::ratfun::RationalCoeff;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// An element of one weight space, as coordinates over the pivot monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    pub weight: Weight,
    pub coords: Vec<RationalCoeff>,
}

impl AlgebraElement {
    pub fn zero(weight: Weight, dim: usize) -> Self {
        AlgebraElement {
            weight,
            coords: vec![RationalCoeff::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, c: &RationalCoeff) -> Self {
        AlgebraElement {
            weight: self.weight.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.weight != rhs.weight {
            return Err(Error::WeightMismatch {
                left: self.weight.0.clone(),
                right: rhs.weight.0.clone(),
            });
        }
        Ok(AlgebraElement {
            weight: self.weight.clone(),
            coords: self
                .coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scaled(&-&RationalCoeff::one()))
    }

    /// All coordinates fixed by the bar involution. Since the pivot
    /// monomials are themselves bar-fixed, this is bar-invariance of the
    /// element.
    pub fn is_bar_symmetric(&self) -> bool {
        self.coords.iter().all(|c| c.is_bar_symmetric())
    }
}

/// One built weight space: spanning monomials, pivots, reduced Gram matrix,
/// the coordinate-expansion table, and the cached operator matrices.
pub struct WeightSpaceModel {
    pub weight: Weight,
    /// All normalized monomials of this weight, descending sequence order.
    pub monomials: Vec<DividedMonomial>,
    index_of: HashMap<DividedMonomial, usize>,
    /// Indices (into `monomials`) of the pivot subset.
    pub pivots: Vec<usize>,
    /// Gram matrix restricted to the pivots.
    pub gram_pivots: Mat,
    /// Coordinates of every spanning monomial over the pivots.
    pub coords: Vec<Vec<RationalCoeff>>,
    /// (i, n) -> matrix of x |-> E_i^{(n)} * x from weight - n e_i.
    left_mult: BTreeMap<(usize, u32), Mat>,
    /// (i, n) -> matrix of x |-> x * E_i^{(n)} from weight - n e_i.
    right_mult: BTreeMap<(usize, u32), Mat>,
    /// Per vertex: derivation to weight - e_i (None when the coordinate is 0).
    der_left: Vec<Option<Mat>>,
    der_right: Vec<Option<Mat>>,
}

impl WeightSpaceModel {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn monomial_index(&self, m: &DividedMonomial) -> Option<usize> {
        self.index_of.get(m).copied()
    }

    pub fn left_mult_matrix(&self, i: usize, n: u32) -> Option<&Mat> {
        self.left_mult.get(&(i, n))
    }

    pub fn right_mult_matrix(&self, i: usize, n: u32) -> Option<&Mat> {
        self.right_mult.get(&(i, n))
    }

    pub fn derivation_matrix(&self, side: Side, i: usize) -> Option<&Mat> {
        match side {
            Side::Left => self.der_left[i].as_ref(),
            Side::Right => self.der_right[i].as_ref(),
        }
    }
}

/// The four Kashiwara operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KashiwaraOp {
    /// Raise along the left i-string.
    Phi,
    /// Lower along the left i-string.
    Eps,
    /// Raise along the right i-string.
    PhiStar,
    /// Lower along the right i-string.
    EpsStar,
}

impl KashiwaraOp {
    pub fn side(self) -> Side {
        match self {
            KashiwaraOp::Phi | KashiwaraOp::Eps => Side::Left,
            KashiwaraOp::PhiStar | KashiwaraOp::EpsStar => Side::Right,
        }
    }

    pub fn raises(self) -> bool {
        matches!(self, KashiwaraOp::Phi | KashiwaraOp::PhiStar)
    }
}

/// Build options; `jobs` is the parallelism width of each height level.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub jobs: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { jobs: 1 }
    }
}

/// All weight spaces of a datum up to a height cutoff.
pub struct Engine {
    datum: CartanDatum,
    max_height: u32,
    models: BTreeMap<Weight, WeightSpaceModel>,
}

impl Engine {
    pub fn build(datum: CartanDatum, max_height: u32) -> Result<Engine> {
        Self::build_with(datum, max_height, &BuildOptions::default(), |_| None, |_, _| {})
    }

    /// Build with a parallelism width and external model load/store hooks
    /// (the cache layer). A loaded model is trusted as-is; every computed
    /// model is offered to `save`.
    pub fn build_with<L, S>(
        datum: CartanDatum,
        max_height: u32,
        opts: &BuildOptions,
        load: L,
        save: S,
    ) -> Result<Engine>
    where
        L: Fn(&Weight) -> Option<WeightSpaceModel> + Sync,
        S: Fn(&Weight, &WeightSpaceModel) + Sync,
    {
        let mut by_height: BTreeMap<u32, Vec<Weight>> = BTreeMap::new();
        for w in enumerate_weights(&datum, max_height) {
            by_height.entry(w.height()).or_default().push(w);
        }
        let mut models: BTreeMap<Weight, WeightSpaceModel> = BTreeMap::new();
        let mut frozen = PairMemo::new();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs.max(1))
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        for (_h, weights) in by_height {
            let results: Vec<(Weight, WeightSpaceModel, PairMemo)> = pool.install(|| {
                weights
                    .par_iter()
                    .map(|w| {
                        if let Some(model) = load(w) {
                            return (w.clone(), model, PairMemo::new());
                        }
                        let (model, local) = build_weight_space(&datum, w, &models, &frozen);
                        save(w, &model);
                        (w.clone(), model, local)
                    })
                    .collect()
            });
            for (w, model, local) in results {
                models.insert(w, model);
                frozen.extend(local);
            }
        }
        Ok(Engine {
            datum,
            max_height,
            models,
        })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn max_height(&self) -> u32 {
        self.max_height
    }

    pub fn model(&self, w: &Weight) -> Result<&WeightSpaceModel> {
        self.models
            .get(w)
            .ok_or_else(|| Error::NoSuchWeight(w.0.clone()))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.models.keys()
    }

    /// dim of the positive half at every built weight.
    pub fn dims(&self) -> BTreeMap<Weight, usize> {
        self.models
            .iter()
            .map(|(w, m)| (w.clone(), m.dim()))
            .collect()
    }

    /// The unit of the algebra (weight 0).
    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement {
            weight: Weight::zero(self.datum.rank()),
            coords: vec![RationalCoeff::one()],
        }
    }

    /// The image of a spanning monomial in its weight space.
    pub fn monomial_image(&self, m: &DividedMonomial) -> Result<AlgebraElement> {
        let w = m.weight(self.datum.rank());
        let model = self.model(&w)?;
        let idx = model
            .monomial_index(m)
            .ok_or_else(|| Error::InvariantViolation(format!("unindexed monomial {m}")))?;
        Ok(AlgebraElement {
            weight: w,
            coords: model.coords[idx].clone(),
        })
    }

    /// The product of divided powers described by a sequence (normalized
    /// first, so adjacent repetitions contribute their binomial factor).
    pub fn monomial_element(&self, seq: &SequenceS) -> Result<AlgebraElement> {
        let (mono, coeff) = DividedMonomial::normalize(seq);
        let w = mono.weight(self.datum.rank());
        if w.height() > self.max_height {
            return Err(Error::WeightOutOfRange(format!("{w}")));
        }
        Ok(self
            .monomial_image(&mono)?
            .scaled(&RationalCoeff::from_laurent(coeff)))
    }

    /// The image of a formal combination of monomials.
    pub fn element_from_formal(&self, x: &FormalElement) -> Result<AlgebraElement> {
        let model = self.model(&x.weight)?;
        let mut out = AlgebraElement::zero(x.weight.clone(), model.dim());
        for (m, c) in &x.terms {
            let img = self.monomial_image(m)?;
            out = out.add(&img.scaled(c))?;
        }
        Ok(out)
    }

    /// Multiplication by the divided power E_i^{(n)} on the given side.
    pub fn mult_divided(
        &self,
        side: Side,
        i: usize,
        n: u32,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        if n == 0 {
            return Ok(x.clone());
        }
        let target = x.weight.plus(i, n);
        let model = self
            .models
            .get(&target)
            .ok_or_else(|| Error::WeightOutOfRange(format!("{target}")))?;
        let mat = match side {
            Side::Left => model.left_mult.get(&(i, n)),
            Side::Right => model.right_mult.get(&(i, n)),
        }
        .expect("multiplication matrix cached for n <= target coordinate");
        Ok(AlgebraElement {
            weight: target,
            coords: mat.mul_vec(&x.coords),
        })
    }

    /// The derivation on the given side; None when the weight has no i.
    pub fn derivation(&self, side: Side, i: usize, x: &AlgebraElement) -> Option<AlgebraElement> {
        let model = self.models.get(&x.weight)?;
        let mat = match side {
            Side::Left => model.der_left[i].as_ref()?,
            Side::Right => model.der_right[i].as_ref()?,
        };
        Some(AlgebraElement {
            weight: x.weight.minus(i, 1).expect("derivation target exists"),
            coords: mat.mul_vec(&x.coords),
        })
    }

    /// The i-string decomposition x = sum_N theta_i^{(N)} x_N with every
    /// component killed by the derivation on the chosen side.
    ///
    /// Components are peeled top-down: N derivations isolate x_N up to the
    /// exact power v^{(N-1)N/2}. The returned vector is indexed by N.
    pub fn string_decompose(
        &self,
        side: Side,
        i: usize,
        x: &AlgebraElement,
    ) -> Result<Vec<AlgebraElement>> {
        let cap = x.weight.get(i);
        let mut comps: Vec<AlgebraElement> = Vec::with_capacity(cap as usize + 1);
        for n in 0..=cap {
            let w = x.weight.minus(i, n).unwrap();
            let dim = self.model(&w)?.dim();
            comps.push(AlgebraElement::zero(w, dim));
        }
        let mut cur = x.clone();
        for n in (1..=cap).rev() {
            // apply the derivation n times
            let mut y = cur.clone();
            let mut vanished = false;
            for _ in 0..n {
                match self.derivation(side, i, &y) {
                    Some(d) => y = d,
                    None => {
                        vanished = true;
                        break;
                    }
                }
            }
            if vanished || y.is_zero() {
                continue;
            }
            let xn = y.scaled(&RationalCoeff::v_pow(-((n as i64 - 1) * n as i64) / 2));
            cur = cur.sub(&self.mult_divided(side, i, n, &xn)?)?;
            comps[n as usize] = xn;
        }
        debug_assert!(
            self.derivation(side, i, &cur).map_or(true, |d| d.is_zero()),
            "bottom component must be killed by the derivation"
        );
        comps[0] = cur;
        Ok(comps)
    }

    /// Kashiwara operator: shift the string decomposition by one and
    /// reassemble. `Ok(None)` encodes the zero result of lowering an
    /// element whose weight has no i at all.
    pub fn kashiwara(
        &self,
        op: KashiwaraOp,
        i: usize,
        x: &AlgebraElement,
    ) -> Result<Option<AlgebraElement>> {
        let side = op.side();
        if !op.raises() && x.weight.get(i) == 0 {
            return Ok(None);
        }
        let comps = self.string_decompose(side, i, x)?;
        if op.raises() {
            let target = x.weight.plus(i, 1);
            let model = self
                .models
                .get(&target)
                .ok_or_else(|| Error::WeightOutOfRange(format!("{target}")))?;
            let mut out = AlgebraElement::zero(target, model.dim());
            for (n, c) in comps.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&self.mult_divided(side, i, n as u32 + 1, c)?)?;
                }
            }
            Ok(Some(out))
        } else {
            let target = x.weight.minus(i, 1).unwrap();
            let model = self.model(&target)?;
            let mut out = AlgebraElement::zero(target, model.dim());
            for (n, c) in comps.iter().enumerate().skip(1) {
                if !c.is_zero() {
                    out = out.add(&self.mult_divided(side, i, n as u32 - 1, c)?)?;
                }
            }
            Ok(Some(out))
        }
    }

    /// The bilinear form in pivot coordinates.
    pub fn pairing(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<RationalCoeff> {
        if x.weight != y.weight {
            return Err(Error::WeightMismatch {
                left: x.weight.0.clone(),
                right: y.weight.0.clone(),
            });
        }
        let g = &self.model(&x.weight)?.gram_pivots;
        let gy = g.mul_vec(&y.coords);
        let mut acc = RationalCoeff::zero();
        for (a, b) in x.coords.iter().zip(gy.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        Ok(acc)
    }

    /// The string projector as a matrix from this weight down to
    /// weight - t e_i: sum_s (-1)^s v^{(s-1)s/2} theta_i^{(s)} d_i^{s+t}.
    pub fn string_projector(&self, w: &Weight, side: Side, i: usize, t: u32) -> Result<Mat> {
        let cap = w.get(i);
        assert!(t <= cap, "projector index exceeds the i coordinate");
        let source_dim = self.model(w)?.dim();
        let target_w = w.minus(i, t).unwrap();
        let target_dim = self.model(&target_w)?.dim();
        let mut acc = Mat::zero(target_dim, source_dim);
        for s in 0..=(cap - t) {
            // d_i^{s+t}: w -> w - (s+t) e_i
            let mut dmat = Mat::identity(source_dim);
            let mut cur_w = w.clone();
            for _ in 0..(s + t) {
                let m = self
                    .model(&cur_w)?
                    .derivation_matrix(side, i)
                    .expect("positive i coordinate along the ladder");
                dmat = m.mul(&dmat);
                cur_w = cur_w.minus(i, 1).unwrap();
            }
            // theta_i^{(s)}: w - (s+t) e_i -> w - t e_i
            let up = if s == 0 {
                dmat
            } else {
                let tm = match side {
                    Side::Left => self.model(&target_w)?.left_mult.get(&(i, s)),
                    Side::Right => self.model(&target_w)?.right_mult.get(&(i, s)),
                }
                .expect("multiplication matrix cached");
                tm.mul(&dmat)
            };
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let coeff = RationalCoeff::from_laurent(LaurentPoly::monomial(
                sign,
                (s as i64 - 1) * s as i64 / 2,
            ));
            acc = acc.add(&up.scale(&coeff));
        }
        Ok(acc)
    }
}

/// Build one weight space given all lower ones.
///
/// Pivots are chosen greedily in the monomial order: a monomial enters the
/// pivot set iff it increases the Gram rank, which for this form (it is
/// anisotropic: the canonical basis is almost orthonormal) is equivalent to
/// a nonzero self-pairing of its projection residual.
fn build_weight_space(
    datum: &CartanDatum,
    w: &Weight,
    lower: &BTreeMap<Weight, WeightSpaceModel>,
    frozen: &PairMemo,
) -> (WeightSpaceModel, PairMemo) {
    let monomials = enumerate_monomials(datum, w);
    let mut memo = LayeredMemo::new(frozen);
    let mut pivots: Vec<usize> = Vec::new();
    let mut gram_rows: Vec<Vec<RationalCoeff>> = Vec::new();
    let mut gram_inv: Option<Mat> = None;
    let mut coords: Vec<Vec<RationalCoeff>> = Vec::with_capacity(monomials.len());

    for (idx, m) in monomials.iter().enumerate() {
        let g: Vec<RationalCoeff> = pivots
            .iter()
            .map(|&p| pairing_monomials(datum, &monomials[p], m, &mut memo))
            .collect();
        let s = pairing_monomials(datum, m, m, &mut memo);
        let proj: Vec<RationalCoeff> = match &gram_inv {
            Some(inv) => inv.mul_vec(&g),
            None => Vec::new(),
        };
        let mut residual = s;
        for (gk, ck) in g.iter().zip(proj.iter()) {
            residual = &residual - &(gk * ck);
        }
        if residual.is_zero() {
            coords.push(proj);
        } else {
            // new pivot: extend the reduced Gram matrix symmetrically
            for (row, gk) in gram_rows.iter_mut().zip(g.iter()) {
                row.push(gk.clone());
            }
            let mut new_row = g.clone();
            new_row.push(pairing_monomials(datum, m, m, &mut memo));
            gram_rows.push(new_row);
            pivots.push(idx);
            let mut unit = vec![RationalCoeff::zero(); pivots.len()];
            unit[pivots.len() - 1] = RationalCoeff::one();
            coords.push(unit);
            gram_inv = Some(
                Mat::from_rows(gram_rows.clone())
                    .inverse()
                    .expect("pivot Gram matrix is invertible"),
            );
        }
    }
    let dim = pivots.len();
    for c in coords.iter_mut() {
        c.resize(dim, RationalCoeff::zero());
    }
    let index_of: HashMap<DividedMonomial, usize> = monomials
        .iter()
        .enumerate()
        .map(|(k, m)| (m.clone(), k))
        .collect();

    // operator matrices
    let rank = datum.rank();
    let mut der_left: Vec<Option<Mat>> = Vec::with_capacity(rank);
    let mut der_right: Vec<Option<Mat>> = Vec::with_capacity(rank);
    for i in 0..rank {
        if w.get(i) == 0 {
            der_left.push(None);
            der_right.push(None);
            continue;
        }
        let below = &lower[&w.minus(i, 1).unwrap()];
        for (side, store) in [(Side::Left, &mut der_left), (Side::Right, &mut der_right)] {
            let cols: Vec<Vec<RationalCoeff>> = pivots
                .iter()
                .map(|&p| {
                    let mut col = vec![RationalCoeff::zero(); below.dim()];
                    for (dm, k) in monomial_derivative(datum, i, &monomials[p], side) {
                        let j = below.index_of[&dm];
                        let kc = RationalCoeff::from_laurent(k);
                        for (slot, c) in col.iter_mut().zip(below.coords[j].iter()) {
                            if !c.is_zero() {
                                *slot = &*slot + &(&kc * c);
                            }
                        }
                    }
                    col
                })
                .collect();
            store.push(Some(Mat::from_columns(cols)));
        }
    }

    let mut left_mult = BTreeMap::new();
    let mut right_mult = BTreeMap::new();
    for i in 0..rank {
        for n in 1..=w.get(i) {
            let below = &lower[&w.minus(i, n).unwrap()];
            for (side, store) in [(Side::Left, &mut left_mult), (Side::Right, &mut right_mult)] {
                let cols: Vec<Vec<RationalCoeff>> = below
                    .pivots
                    .iter()
                    .map(|&p| {
                        let (pm, k) = match side {
                            Side::Left => below.monomials[p].prepended(i, n),
                            Side::Right => below.monomials[p].appended(i, n),
                        };
                        let j = index_of[&pm];
                        let kc = RationalCoeff::from_laurent(k);
                        coords[j].iter().map(|c| &kc * c).collect()
                    })
                    .collect();
                store.insert((i, n), Mat::from_columns(cols));
            }
        }
    }

    let model = WeightSpaceModel {
        weight: w.clone(),
        monomials,
        index_of,
        pivots,
        gram_pivots: Mat::from_rows(gram_rows),
        coords,
        left_mult,
        right_mult,
        der_left,
        der_right,
    };
    (model, memo.local)
}

/// Serializable mirror of a weight-space model (the cache payload).
#[derive(Serialize, Deserialize)]
pub struct ModelPayload {
    pub weight: Weight,
    pub monomials: Vec<SequenceS>,
    pub pivots: Vec<usize>,
    pub gram_pivots: Vec<Vec<RationalCoeff>>,
    pub coords: Vec<Vec<RationalCoeff>>,
    pub left_mult: Vec<(usize, u32, Vec<Vec<RationalCoeff>>)>,
    pub right_mult: Vec<(usize, u32, Vec<Vec<RationalCoeff>>)>,
    pub der_left: Vec<Option<Vec<Vec<RationalCoeff>>>>,
    pub der_right: Vec<Option<Vec<Vec<RationalCoeff>>>>,
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<RationalCoeff>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

fn rows_to_mat(rows: Vec<Vec<RationalCoeff>>, cols_hint: usize) -> Mat {
    if rows.is_empty() {
        return Mat::zero(0, cols_hint);
    }
    Mat::from_rows(rows)
}

impl ModelPayload {
    pub fn from_model(m: &WeightSpaceModel) -> Self {
        ModelPayload {
            weight: m.weight.clone(),
            monomials: m.monomials.iter().map(|x| x.sequence().clone()).collect(),
            pivots: m.pivots.clone(),
            gram_pivots: mat_to_rows(&m.gram_pivots),
            coords: m.coords.clone(),
            left_mult: m
                .left_mult
                .iter()
                .map(|(&(i, n), mat)| (i, n, mat_to_rows(mat)))
                .collect(),
            right_mult: m
                .right_mult
                .iter()
                .map(|(&(i, n), mat)| (i, n, mat_to_rows(mat)))
                .collect(),
            der_left: m
                .der_left
                .iter()
                .map(|o| o.as_ref().map(mat_to_rows))
                .collect(),
            der_right: m
                .der_right
                .iter()
                .map(|o| o.as_ref().map(mat_to_rows))
                .collect(),
        }
    }

    pub fn into_model(self) -> Result<WeightSpaceModel> {
        let monomials: Vec<DividedMonomial> = self
            .monomials
            .into_iter()
            .map(|s| {
                let (m, c) = DividedMonomial::normalize(&s);
                if !c.is_one() {
                    return Err(Error::CorruptEntry("non-normalized cached monomial".into()));
                }
                Ok(m)
            })
            .collect::<Result<_>>()?;
        let index_of: HashMap<DividedMonomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let dim = self.pivots.len();
        Ok(WeightSpaceModel {
            weight: self.weight,
            monomials,
            index_of,
            pivots: self.pivots,
            gram_pivots: rows_to_mat(self.gram_pivots, dim),
            coords: self.coords,
            left_mult: self
                .left_mult
                .into_iter()
                .map(|(i, n, rows)| ((i, n), rows_to_mat(rows, 0)))
                .collect(),
            right_mult: self
                .right_mult
                .into_iter()
                .map(|(i, n, rows)| ((i, n), rows_to_mat(rows, 0)))
                .collect(),
            der_left: self
                .der_left
                .into_iter()
                .map(|o| o.map(|rows| rows_to_mat(rows, dim)))
                .collect(),
            der_right: self
                .der_right
                .into_iter()
                .map(|o| o.map(|rows| rows_to_mat(rows, dim)))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_engine(h: u32) -> Engine {
        Engine::build(CartanDatum::preset("A2").unwrap(), h).unwrap()
    }

    fn mono(entries: &[(usize, u32)]) -> DividedMonomial {
        let (m, c) = DividedMonomial::normalize(&SequenceS(entries.to_vec()));
        assert!(c.is_one());
        m
    }

    #[test]
    fn dims_match_examples() {
        let e = a2_engine(3);
        assert_eq!(e.model(&Weight(vec![1, 1])).unwrap().dim(), 2);
        assert_eq!(e.model(&Weight(vec![2, 1])).unwrap().dim(), 2);
        assert_eq!(e.model(&Weight(vec![3, 0])).unwrap().dim(), 1);
        let r1 = Engine::build(CartanDatum::preset("A1").unwrap(), 5).unwrap();
        for n in 0..=5u32 {
            assert_eq!(r1.model(&Weight(vec![n])).unwrap().dim(), 1);
        }
    }

    #[test]
    fn serre_dependent_monomial_at_2_1() {
        // dim 2 from 3 spanning monomials; the dependent one carries the
        // quantum Serre combination in its coordinates
        let e = a2_engine(3);
        let model = e.model(&Weight(vec![2, 1])).unwrap();
        assert_eq!(model.monomials.len(), 3);
        assert_eq!(model.dim(), 2);
        let s = crate::free::serre_element(e.datum(), 0, 1);
        let img = e.element_from_formal(&s).unwrap();
        assert!(img.is_zero(), "Serre element vanishes in the quotient");
    }

    #[test]
    fn divided_power_multiplication_identity() {
        // theta^{(1)} E^{(1)} = [2] E^{(2)} in rank 1
        let e = Engine::build(CartanDatum::preset("A1").unwrap(), 4).unwrap();
        let x = e.monomial_image(&mono(&[(0, 1)])).unwrap();
        let y = e.mult_divided(Side::Left, 0, 1, &x).unwrap();
        let e2 = e.monomial_image(&mono(&[(0, 2)])).unwrap();
        assert_eq!(y, e2.scaled(&RationalCoeff::parse("v + v^-1").unwrap()));
        // theta_i^{(a)} theta_i^{(b)} = binom(a+b, a) theta_i^{(a+b)}
        let u = e.unit();
        let lhs = e
            .mult_divided(Side::Left, 0, 2, &e.mult_divided(Side::Left, 0, 1, &u).unwrap())
            .unwrap();
        let rhs = e
            .mult_divided(Side::Left, 0, 3, &u)
            .unwrap()
            .scaled(&RationalCoeff::from_laurent(
                LaurentPoly::quantum_binomial(3, 2).unwrap(),
            ));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_and_right_multiplication_examples() {
        let e = a2_engine(2);
        let e2 = e.monomial_image(&mono(&[(1, 1)])).unwrap();
        let e1 = e.monomial_image(&mono(&[(0, 1)])).unwrap();
        let e1e2 = e.monomial_image(&mono(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(e.mult_divided(Side::Left, 0, 1, &e2).unwrap(), e1e2);
        assert_eq!(e.mult_divided(Side::Right, 1, 1, &e1).unwrap(), e1e2);
    }

    #[test]
    fn string_decomposition_examples() {
        // rank 1: E^{(3)} is a pure divided power
        let r1 = Engine::build(CartanDatum::preset("A1").unwrap(), 4).unwrap();
        let x = r1.monomial_image(&mono(&[(0, 3)])).unwrap();
        let comps = r1.string_decompose(Side::Left, 0, &x).unwrap();
        assert!(comps[0].is_zero() && comps[1].is_zero() && comps[2].is_zero());
        assert_eq!(comps[3], r1.unit());

        let e = a2_engine(2);
        // x = E1 E2, i = 1: x_1 = E2, x_0 = 0
        let x = e.monomial_image(&mono(&[(0, 1), (1, 1)])).unwrap();
        let comps = e.string_decompose(Side::Left, 0, &x).unwrap();
        let e2 = e.monomial_image(&mono(&[(1, 1)])).unwrap();
        assert!(comps[0].is_zero());
        assert_eq!(comps[1], e2);
        // x = E2 E1, i = 1: x_1 = v^-1 E2, x_0 = E2 E1 - v^-1 E1 E2
        let x = e.monomial_image(&mono(&[(1, 1), (0, 1)])).unwrap();
        let comps = e.string_decompose(Side::Left, 0, &x).unwrap();
        assert_eq!(comps[1], e2.scaled(&RationalCoeff::v_pow(-1)));
        let e1e2 = e.monomial_image(&mono(&[(0, 1), (1, 1)])).unwrap();
        let expect = x.sub(&e1e2.scaled(&RationalCoeff::v_pow(-1))).unwrap();
        assert_eq!(comps[0], expect);
        // reconstruction is exact
        let mut back = AlgebraElement::zero(x.weight.clone(), 2);
        for (n, c) in comps.iter().enumerate() {
            if !c.is_zero() {
                back = back
                    .add(&e.mult_divided(Side::Left, 0, n as u32, c).unwrap())
                    .unwrap();
            }
        }
        assert_eq!(back, x);
    }

    #[test]
    fn kashiwara_examples() {
        let e = a2_engine(2);
        let e1e2 = e.monomial_image(&mono(&[(0, 1), (1, 1)])).unwrap();
        let e2 = e.monomial_image(&mono(&[(1, 1)])).unwrap();
        let e2e1 = e.monomial_image(&mono(&[(1, 1), (0, 1)])).unwrap();
        // lowering E1 E2 along color 1 gives exactly E2
        assert_eq!(
            e.kashiwara(KashiwaraOp::Eps, 0, &e1e2).unwrap().unwrap(),
            e2
        );
        // raising E2 along color 1 gives exactly E1 E2
        assert_eq!(
            e.kashiwara(KashiwaraOp::Phi, 0, &e2).unwrap().unwrap(),
            e1e2
        );
        // lowering an element with no left string is zero
        assert!(e.kashiwara(KashiwaraOp::Eps, 0, &e2).unwrap().is_none());
        // the starred operators act from the right
        assert_eq!(
            e.kashiwara(KashiwaraOp::PhiStar, 0, &e2).unwrap().unwrap(),
            e2e1
        );
    }

    #[test]
    fn pairing_examples() {
        let e = a2_engine(2);
        let e1e2 = e.monomial_image(&mono(&[(0, 1), (1, 1)])).unwrap();
        let e2e1 = e.monomial_image(&mono(&[(1, 1), (0, 1)])).unwrap();
        let p = e.pairing(&e1e2, &e2e1).unwrap();
        let expect = &RationalCoeff::v_pow(-1)
            * &crate::ratfun::one_minus_vinv2_inverse().pow(2).unwrap();
        assert_eq!(p, expect);
        let zero = AlgebraElement::zero(Weight(vec![1, 1]), 2);
        assert!(e.pairing(&e1e2, &zero).unwrap().is_zero());
        assert!(e
            .pairing(&e1e2, &e.unit())
            .is_err());
    }

    /// Rebuilding with the opposite vertex order must give the same
    /// dimension at every weight.
    #[test]
    fn dims_do_not_depend_on_the_vertex_order() {
        let d1 = CartanDatum::preset("A2").unwrap();
        let d2 = d1.with_order(vec![1, 0]).unwrap();
        let e1 = Engine::build(d1, 5).unwrap();
        let e2 = Engine::build(d2, 5).unwrap();
        for (w, m) in e1.dims() {
            assert_eq!(m, e2.dims()[&w], "dim mismatch at {w}");
        }
    }

    #[test]
    fn parallel_build_matches_sequential() {
        let d = CartanDatum::preset("A2").unwrap();
        let seq = Engine::build(d.clone(), 4).unwrap();
        let par = Engine::build_with(
            d,
            4,
            &BuildOptions { jobs: 4 },
            |_| None,
            |_, _| {},
        )
        .unwrap();
        for (w, m) in seq.models.iter() {
            let p = &par.models[w];
            assert_eq!(m.pivots, p.pivots);
            assert_eq!(m.coords, p.coords);
            assert_eq!(m.gram_pivots, p.gram_pivots);
        }
    }

    #[test]
    fn model_payload_round_trips() {
        let e = a2_engine(3);
        for (_, m) in e.models.iter() {
            let payload = ModelPayload::from_model(m);
            let text = serde_json::to_string(&payload).unwrap();
            let back: ModelPayload = serde_json::from_str(&text).unwrap();
            let rebuilt = back.into_model().unwrap();
            assert_eq!(rebuilt.monomials, m.monomials);
            assert_eq!(rebuilt.pivots, m.pivots);
            assert_eq!(rebuilt.coords, m.coords);
            assert_eq!(rebuilt.gram_pivots, m.gram_pivots);
        }
    }
}
