//! Radon-Nikodym derivatives `d nu_c / d nu` at vertices, decay of cell
//! measures along corner sequences, and the rank-one limit quantities.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::generators::{generator, limit_matrix, limit_row, word_matrix, Family};
use crate::harmonic::{measure_coeffs, Harmonic};
use crate::linalg::{Mat3, Vec3};
use crate::measures::{basis_masses, children_triple, MeasureCoeffs};
use crate::rational::{self, int, rat, Rational};
use crate::word::{Letter, VertexAddress, Word};

/// `v_j`: `2/3` at `j`, `1/6` elsewhere.
pub fn corner_weights(j: Letter) -> Vec3 {
    let mut v = [rat(1, 6), rat(1, 6), rat(1, 6)];
    v[j as usize] = rat(2, 3);
    Vec3(v)
}

/// Limit-row quotient for the representation `(w, j)` as given, without canonicalizing.
pub fn derivative_at(c: &MeasureCoeffs, w: &Word, j: Letter) -> Rational {
    let rho = limit_row(j);
    let x = children_triple(c, w).0;
    let xi = children_triple(&MeasureCoeffs::kusuoka(), w).0;
    rho.dot(&x) / rho.dot(&xi)
}

/// `[rho_j . X] / [rho_j . Xi]` with `X`, `Xi` the child triples of `c` and `nu` on `F_w`.
pub fn rn_derivative(c: &MeasureCoeffs, v: &VertexAddress) -> Rational {
    let v = v.canonicalize();
    derivative_at(c, &v.word, v.corner)
}

/// `(c . M_w v_j) / ((1,1,1) . M_w v_j)`.
pub fn rn_derivative_via_m(c: &MeasureCoeffs, v: &VertexAddress) -> Rational {
    let v = v.canonicalize();
    let col = word_matrix(Family::M, &v.word).apply(&corner_weights(v.corner));
    c.0.dot(&col) / col.sum()
}

/// Values from both cell sides of a junction point; `None` for boundary vertices.
pub fn junction_values(c: &MeasureCoeffs, v: &VertexAddress) -> Option<(Rational, Rational)> {
    let alt = v.alternate()?;
    let canon = v.canonicalize();
    Some((
        derivative_at(c, &canon.word, canon.corner),
        derivative_at(c, &alt.word, alt.corner),
    ))
}

/// `14x - y - z` for the child triple of `nu_h` on `F_w`.
pub fn skew_gap(h: &Harmonic, w: &Word) -> Rational {
    let t = children_triple(&measure_coeffs(h, h), w).0;
    int(14) * &t[0] - &t[1] - &t[2]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    /// Consecutive ratios tend to `3/5`.
    Generic,
    /// Consecutive ratios tend to `1/15`.
    Degenerate,
    Unclassified,
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    /// `nu_c(F_w F_i^m SG)` for `m = 0..=depth`.
    pub values: Vec<Rational>,
    /// Last consecutive ratio, `NaN` when undefined.
    pub fitted_ratio: f64,
    pub classification: DecayClass,
}

pub const DECAY_TOLERANCE: f64 = 1e-6;

pub fn classify_ratio(r: f64) -> DecayClass {
    if (r - 0.6).abs() <= DECAY_TOLERANCE {
        DecayClass::Generic
    } else if (r - 1.0 / 15.0).abs() <= DECAY_TOLERANCE {
        DecayClass::Degenerate
    } else {
        DecayClass::Unclassified
    }
}

pub fn decay_sequence(c: &MeasureCoeffs, w: &Word, i: Letter, depth: usize) -> Result<DecayReport> {
    if w.len() + depth > crate::MAX_WORD_LEN {
        return Err(Error::WordTooLong {
            len: w.len() + depth,
            max: crate::MAX_WORD_LEN,
        });
    }
    if i > 2 {
        return Err(Error::InvalidLetter(i));
    }
    let mut row = word_matrix(Family::M, w).left_apply(&c.0);
    let m_i = generator(Family::M, i);
    let mut values = Vec::with_capacity(depth + 1);
    for m in 0..=depth {
        if m > 0 {
            row = m_i.left_apply(&row);
        }
        values.push(row.sum() * int(2));
    }
    let fitted_ratio = match values.as_slice() {
        [.., prev, last] if !prev.is_zero() => rational::to_f64(&(last / prev)),
        _ => f64::NAN,
    };
    Ok(DecayReport {
        values,
        fitted_ratio,
        classification: classify_ratio(fitted_ratio),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extrema {
    pub min: Rational,
    pub max: Rational,
    pub argmin: VertexAddress,
    pub argmax: VertexAddress,
    pub count: usize,
}

impl Extrema {
    fn new(v: VertexAddress, x: Rational) -> Self {
        Extrema {
            min: x.clone(),
            max: x,
            argmin: v.clone(),
            argmax: v,
            count: 1,
        }
    }

    fn push(&mut self, v: &VertexAddress, x: &Rational) {
        self.count += 1;
        if x < &self.min || (x == &self.min && v < &self.argmin) {
            self.min = x.clone();
            self.argmin = v.clone();
        }
        if x > &self.max || (x == &self.max && v < &self.argmax) {
            self.max = x.clone();
            self.argmax = v.clone();
        }
    }

    fn merge(mut self, other: Extrema) -> Extrema {
        self.count -= 1;
        self.push(&other.argmin, &other.min);
        self.push(&other.argmax, &other.max);
        self.count += other.count - 1;
        self
    }
}

/// Extrema over every vertex of the cell, and over those other than its three corners.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub all: Extrema,
    pub interior: Option<Extrema>,
}

/// Scans the canonical vertices `F_w F_u(q_j)`, `|u| <= depth`, evaluating
/// the derivative of `c` at each. Witnesses break ties by the smallest address.
pub fn scan_extrema(c: &MeasureCoeffs, w: &Word, depth: usize) -> Result<ScanReport> {
    if w.len() + depth > crate::MAX_WORD_LEN {
        return Err(Error::WordTooLong {
            len: w.len() + depth,
            max: crate::MAX_WORD_LEN,
        });
    }
    let mw = word_matrix(Family::M, w);
    let row_c = mw.left_apply(&c.0);
    let row_nu = mw.column_sums();
    let weights: [Vec3; 3] = std::array::from_fn(|j| corner_weights(j as Letter));

    let eval = |rc: &Vec3, rn: &Vec3, j: usize| rc.dot(&weights[j]) / rn.dot(&weights[j]);

    let mut corners: Option<Extrema> = None;
    for j in 0..3u8 {
        let v = VertexAddress::new(w.clone(), j)?.canonicalize();
        let x = eval(&row_c, &row_nu, j as usize);
        match corners.as_mut() {
            None => corners = Some(Extrema::new(v, x)),
            Some(e) => e.push(&v, &x),
        }
    }
    let corners = corners.expect("three corners");

    let mut interior: Option<Extrema> = None;
    if depth > 0 {
        // (word, c^T M, 1^T M); only canonical representations are evaluated,
        // so each vertex below the corners is visited once
        let mut stack = vec![(w.clone(), row_c, row_nu, 0usize)];
        while let Some((u, rc, rn, d)) = stack.pop() {
            if d == depth {
                continue;
            }
            for k in 0..3u8 {
                let m_k = generator(Family::M, k);
                let child = u.child(k)?;
                let rc2 = m_k.left_apply(&rc);
                let rn2 = m_k.left_apply(&rn);
                for j in (k + 1)..3 {
                    let v = VertexAddress {
                        word: child.clone(),
                        corner: j,
                    };
                    let x = eval(&rc2, &rn2, j as usize);
                    match interior.as_mut() {
                        None => interior = Some(Extrema::new(v, x)),
                        Some(e) => e.push(&v, &x),
                    }
                }
                stack.push((child, rc2, rn2, d + 1));
            }
        }
    }
    let all = match interior.clone() {
        Some(i) => corners.merge(i),
        None => corners,
    };
    Ok(ScanReport { all, interior })
}

/// Every canonical vertex of level `<= depth` inside `F_w` with its derivative value.
pub fn vertex_values(c: &MeasureCoeffs, w: &Word, depth: usize) -> Result<HashMap<VertexAddress, Rational>> {
    let mut out = HashMap::new();
    for v in crate::word::cell_vertices(w, depth)? {
        let x = rn_derivative(c, &v);
        out.insert(v, x);
    }
    Ok(out)
}

/// `(-1,-1,14) . E_w (1,1,3)` for `w` over `{1,2}`.
pub fn c_w(w: &Word) -> Result<Rational> {
    if w.contains(0) {
        return Err(Error::ContainsLetterZero(w.to_string()));
    }
    Ok(limit_row(2).dot(&word_matrix(Family::E, w).apply(&Vec3::from_ints([1, 1, 3]))))
}

/// `c_{1^m} = (45/2)(1/15)^m + (5/2)(3/5)^m + 15 (1/5)^m`.
pub fn c_ones_closed(m: usize) -> Rational {
    rat(45, 2) * rational::pow(&rat(1, 15), m)
        + rat(5, 2) * rational::pow(&rat(3, 5), m)
        + int(15) * rational::pow(&rat(1, 5), m)
}

/// The variant with `99/4` in place of `45/2`, kept for comparison.
pub fn c_ones_printed(m: usize) -> Rational {
    int(15) * rational::pow(&rat(1, 5), m)
        + rat(99, 4) * rational::pow(&rat(1, 15), m)
        + rat(5, 2) * rational::pow(&rat(3, 5), m)
}

pub const MAX_NORM_LEVEL: usize = 10;

/// Upper bound for `(5/3)^m ||E_w||_1`, uniform in `m`.
pub fn operator_norm_bound() -> Rational {
    rat(27, 5)
}

/// `max_{|w| = m} (5/3)^m ||E_w||_1` with the first maximizing word.
pub fn operator_norm_scan(m: usize) -> Result<(Rational, Word)> {
    if m > MAX_NORM_LEVEL {
        return Err(Error::DepthLimit {
            requested: m,
            max: MAX_NORM_LEVEL,
        });
    }
    let mut best: Option<(Rational, Word)> = None;
    let mut stack = vec![(Word::empty(), Mat3::identity())];
    while let Some((w, e)) = stack.pop() {
        if w.len() == m {
            let n = e.norm1();
            let better = match &best {
                None => true,
                Some((b, bw)) => n > *b || (n == *b && w < *bw),
            };
            if better {
                best = Some((n, w));
            }
            continue;
        }
        for j in (0..3).rev() {
            stack.push((w.child(j)?, generator(Family::E, j) * &e));
        }
    }
    let (n, w) = best.expect("at least one word");
    Ok((n * rational::pow(&rat(5, 3), m), w))
}

pub const MAX_MONOTONE_LEVEL: usize = 12;

#[derive(Clone, Debug)]
pub struct MonotoneReport {
    pub level: usize,
    /// First adjacent pair `(w, w')` with `nu_2(F_w) > nu_2(F_w')`.
    pub nu2_violation: Option<(Word, Word)>,
    /// First `w` with `c_w < c_{1^m}`.
    pub cw_violation: Option<Word>,
}

impl MonotoneReport {
    pub fn holds(&self) -> bool {
        self.nu2_violation.is_none() && self.cw_violation.is_none()
    }
}

/// Checks that `nu_2(F_w SG)` is nondecreasing along `[q_1, q_2]` over `w` in
/// `{1,2}^m` and that `c_w >= c_{1^m}` for all such `w`.
pub fn monotone_left_right(m: usize) -> Result<MonotoneReport> {
    if m > MAX_MONOTONE_LEVEL {
        return Err(Error::DepthLimit {
            requested: m,
            max: MAX_MONOTONE_LEVEL,
        });
    }
    let words = Word::all_of_length_over(&[1, 2], m)?;
    let nu2: Vec<Rational> = words.iter().map(|w| basis_masses(w)[2].clone()).collect();
    let nu2_violation = (1..words.len())
        .find(|&i| nu2[i - 1] > nu2[i])
        .map(|i| (words[i - 1].clone(), words[i].clone()));
    let floor = c_w(&Word::repeat(1, m)?)?;
    let mut cw_violation = None;
    for w in &words {
        if c_w(w)? < floor {
            cw_violation = Some(w.clone());
            break;
        }
    }
    Ok(MonotoneReport {
        level: m,
        nu2_violation,
        cw_violation,
    })
}

/// `||(5/3)^n E_j^n - A_j||_1` for `n = 0..=n_max`, in float projection.
pub fn eigen_convergence(j: Letter, n_max: usize) -> Vec<f64> {
    let a = limit_matrix(j);
    let e = generator(Family::E, j).scale(&rat(5, 3));
    let mut p = Mat3::identity();
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            p = &e * &p;
        }
        out.push(rational::to_f64(&(&p - &a).norm1()));
    }
    out
}

/// Dyadic position `num / 2^exp` along an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dyadic {
    pub num: u64,
    pub exp: u32,
}

impl Dyadic {
    pub fn reduced(self) -> Dyadic {
        let mut d = self;
        while d.exp > 0 && d.num.is_multiple_of(2) {
            d.num /= 2;
            d.exp -= 1;
        }
        d
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (1u64 << self.exp) as f64
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.reduced();
        if d.exp == 0 {
            write!(f, "{}", d.num)
        } else {
            write!(f, "{}/{}", d.num, 1u64 << d.exp)
        }
    }
}

pub const MAX_PROFILE_DEPTH: usize = 20;

/// Derivative values at the level-`<= depth` vertices on the edge
/// `[F_w q_j, F_w q_k]`, ordered from `F_w q_j` (position 0) to `F_w q_k` (position 1).
pub fn edge_profile(
    c: &MeasureCoeffs,
    w: &Word,
    edge: (Letter, Letter),
    depth: usize,
) -> Result<Vec<(Dyadic, Rational)>> {
    let (j, k) = edge;
    if j > 2 {
        return Err(Error::InvalidLetter(j));
    }
    if k > 2 {
        return Err(Error::InvalidLetter(k));
    }
    if j == k {
        return Err(Error::InvalidArgument(format!("edge needs two distinct corners, got {j},{k}")));
    }
    if depth > MAX_PROFILE_DEPTH {
        return Err(Error::DepthLimit {
            requested: depth,
            max: MAX_PROFILE_DEPTH,
        });
    }
    if w.len() + depth > crate::MAX_WORD_LEN {
        return Err(Error::WordTooLong {
            len: w.len() + depth,
            max: crate::MAX_WORD_LEN,
        });
    }
    let n = 1u64 << depth;
    let mut out = Vec::with_capacity(n as usize + 1);
    for p in 0..=n {
        let v = if p == n {
            VertexAddress::new(w.clone(), k)?
        } else {
            // binary digits of p, most significant first: 0 -> F_j, 1 -> F_k
            let mut letters = w.letters().to_vec();
            for bit in (0..depth).rev() {
                letters.push(if (p >> bit) & 1 == 0 { j } else { k });
            }
            VertexAddress::new(Word::new(letters)?, j)?
        };
        out.push((Dyadic { num: p, exp: depth as u32 }.reduced(), rn_derivative(c, &v)));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QVariant {
    /// `1/25 + (12/25) R_i`.
    #[default]
    Derived,
    /// `1/15 + (12/25) R_i`.
    Printed,
}

/// `Q_i(v)` with `R_i = d nu_i / d nu`.
pub fn q_factor(i: Letter, v: &VertexAddress, variant: QVariant) -> Rational {
    let r = rn_derivative(&MeasureCoeffs::basis(i), v);
    let base = match variant {
        QVariant::Derived => rat(1, 25),
        QVariant::Printed => rat(1, 15),
    };
    base + rat(12, 25) * r
}

/// `prod_k Q_{w_k}(F_{w_{k+1}} ... F_{w_m} v)`, innermost factor first.
pub fn q_word(w: &Word, v: &VertexAddress, variant: QVariant) -> Result<Rational> {
    let mut point = v.canonicalize();
    let mut acc = int(1);
    for &l in w.letters().iter().rev() {
        acc *= q_factor(l, &point, variant);
        point = point.apply_contraction(l)?;
    }
    Ok(acc)
}

/// True when `x` lies in `[0, 1]`.
pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && x <= &int(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexAddress {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_examples() {
        let h0 = MeasureCoeffs::basis(0);
        assert_eq!(rn_derivative(&h0, &v(":0")), rat(2, 3));
        assert_eq!(rn_derivative(&h0, &v("1:2")), int(0));
        assert_eq!(rn_derivative(&h0, &v("0:1")), rat(1, 2));
        assert_eq!(rn_derivative_via_m(&h0, &v(":1")), rat(1, 6));
        assert_eq!(rn_derivative_via_m(&MeasureCoeffs::kusuoka(), &v("0121:2")), int(1));
        assert_eq!(rn_derivative_via_m(&h0, &v("0:1")), rat(1, 2));
        let (a, b) = junction_values(&h0, &v("0:1")).unwrap();
        assert_eq!((a, b), (rat(1, 2), rat(1, 2)));
    }

    #[test]
    fn skew_gap_examples() {
        assert_eq!(skew_gap(&Harmonic::basis(0), &Word::empty()), int(16));
        let skew = Harmonic::from_ints([1, 2, 0]);
        for s in ["", "1", "20"] {
            assert!(skew_gap(&skew, &w(s)).is_zero() == (s.is_empty()));
        }
        assert!(skew_gap(&Harmonic::constant(int(3)), &w("12")).is_zero());
    }

    #[test]
    fn decay_examples() {
        let r = decay_sequence(&MeasureCoeffs::kusuoka(), &Word::empty(), 0, 30).unwrap();
        assert!((r.fitted_ratio - 0.6).abs() < 1e-9);
        assert_eq!(r.classification, DecayClass::Generic);
        let d = decay_sequence(&MeasureCoeffs::basis(0), &w("1"), 2, 30).unwrap();
        assert!((d.fitted_ratio - 1.0 / 15.0).abs() < 1e-9);
        assert_eq!(d.classification, DecayClass::Degenerate);
        let g = decay_sequence(&MeasureCoeffs::basis(0), &Word::empty(), 0, 30).unwrap();
        assert_eq!(g.classification, DecayClass::Generic);
    }

    #[test]
    fn scan_small() {
        let r = scan_extrema(&MeasureCoeffs::kusuoka(), &w("01"), 3).unwrap();
        assert_eq!(r.all.min, int(1));
        assert_eq!(r.all.max, int(1));
        let s = scan_extrema(&MeasureCoeffs::basis(0), &Word::empty(), 4).unwrap();
        assert_eq!(s.all.max, rat(2, 3));
        let inner = s.interior.unwrap();
        assert!(inner.max < rat(2, 3));
        assert_eq!(inner.count + 3, crate::word::cell_vertices(&Word::empty(), 4).unwrap().len());
        assert!(!inner.min.is_negative());
    }

    #[test]
    fn scan_matches_brute_force() {
        let c = MeasureCoeffs::from_ints([2, -1, 2]);
        let cell = w("12");
        let s = scan_extrema(&c, &cell, 3).unwrap();
        let vals = vertex_values(&c, &cell, 3).unwrap();
        assert_eq!(vals.len(), s.all.count);
        assert_eq!(vals.values().max().unwrap(), &s.all.max);
        assert_eq!(vals.values().min().unwrap(), &s.all.min);
        assert_eq!(vals[&s.all.argmax], s.all.max);
    }

    #[test]
    fn c_w_examples() {
        assert_eq!(c_w(&Word::empty()).unwrap(), int(40));
        assert_eq!(c_w(&w("1")).unwrap(), int(6));
        assert!(c_w(&w("2")).unwrap().is_positive());
        assert!(matches!(c_w(&w("10")), Err(Error::ContainsLetterZero(_))));
        for m in 0..6 {
            assert_eq!(c_w(&Word::repeat(1, m).unwrap()).unwrap(), c_ones_closed(m));
        }
        assert_ne!(c_ones_printed(1), c_ones_closed(1));
    }

    #[test]
    fn norm_scan_small_levels() {
        assert_eq!(operator_norm_scan(0).unwrap().0, int(1));
        let (n1, _) = operator_norm_scan(1).unwrap();
        assert!(n1 > int(1) && n1 <= operator_norm_bound());
        assert!(operator_norm_scan(11).is_err());
    }

    #[test]
    fn monotone_small_levels() {
        assert!(monotone_left_right(1).unwrap().holds());
        assert!(monotone_left_right(2).unwrap().holds());
        assert!(monotone_left_right(13).is_err());
    }

    #[test]
    fn edge_profiles() {
        let h0 = MeasureCoeffs::basis(0);
        let p = edge_profile(&h0, &Word::empty(), (1, 2), 1).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[1].0.to_string(), "1/2");
        assert_eq!(p[1].1, int(0));
        let p = edge_profile(&h0, &Word::empty(), (0, 1), 1).unwrap();
        assert_eq!(p[1].1, rat(1, 2));
        assert_eq!(p[0].1, rat(2, 3));
        assert_eq!(p[2].1, rat(1, 6));
        let k = edge_profile(&MeasureCoeffs::kusuoka(), &w("2"), (0, 2), 4).unwrap();
        assert!(k.iter().all(|(_, x)| *x == int(1)));
        assert!(edge_profile(&h0, &Word::empty(), (1, 1), 1).is_err());
    }

    #[test]
    fn q_factor_examples() {
        assert_eq!(q_factor(0, &v(":0"), QVariant::Derived), rat(9, 25));
        assert_eq!(q_factor(0, &v(":1"), QVariant::Derived), rat(3, 25));
        for s in [":0", "0:1", "012:2"] {
            let sum: Rational = (0..3).map(|i| q_factor(i, &v(s), QVariant::Derived)).sum();
            assert_eq!(sum, rat(3, 5));
        }
        assert_eq!(q_factor(0, &v(":0"), QVariant::Printed), rat(1, 15) + rat(8, 25));
        assert_eq!(
            q_word(&w("0"), &v(":1"), QVariant::Derived).unwrap(),
            q_factor(0, &v(":1"), QVariant::Derived)
        );
    }

    #[test]
    fn eigen_limits_converge() {
        for j in 0..3 {
            let seq = eigen_convergence(j, 30);
            assert!(seq.windows(2).all(|p| p[1] <= p[0]));
            assert!(seq[30] < 1e-5);
        }
    }
}
