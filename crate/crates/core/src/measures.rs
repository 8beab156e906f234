//! Energy measures as coefficient triples in the basis `(nu_0, nu_1, nu_2)`,
//! `nu_i = nu_{h_i}`, and their values on cells.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::generators::{generator, word_matrix, Family};
use crate::linalg::{Mat3, Vec3};
use crate::rational::{self, int, rat, Rational};
use crate::word::{Letter, Word};

/// The measure `a_0 nu_0 + a_1 nu_1 + a_2 nu_2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureCoeffs(pub Vec3);

/// A measure's values on the three children `F_w F_0`, `F_w F_1`, `F_w F_2` of a cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellTriple(pub Vec3);

impl MeasureCoeffs {
    pub fn from_ints(v: [i64; 3]) -> Self {
        MeasureCoeffs(Vec3::from_ints(v))
    }

    /// The Kusuoka measure `nu = nu_0 + nu_1 + nu_2`.
    pub fn kusuoka() -> Self {
        MeasureCoeffs(Vec3::ones())
    }

    pub fn basis(i: Letter) -> Self {
        MeasureCoeffs(Vec3::unit(i as usize))
    }

    /// `nu_c(SG) = 2 (a_0 + a_1 + a_2)`.
    pub fn total_mass(&self) -> Rational {
        self.0.sum() * int(2)
    }

    /// `a_0 a_1 + a_1 a_2 + a_0 a_2`.
    pub fn cone_value(&self) -> Rational {
        let a = &self.0;
        &a[0] * &a[1] + &a[1] * &a[2] + &a[0] * &a[2]
    }

    /// Closed positive cone: `ab + bc + ca >= 0` on the nappe with `a + b + c >= 0`.
    pub fn is_positive(&self) -> bool {
        !self.cone_value().is_negative() && !self.0.sum().is_negative()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.to_f64()
    }
}

impl fmt::Display for MeasureCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for MeasureCoeffs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse("coefficients", s, "expected a0,a1,a2"));
        }
        Ok(MeasureCoeffs(Vec3::new(
            rational::parse(parts[0])?,
            rational::parse(parts[1])?,
            rational::parse(parts[2])?,
        )))
    }
}

impl fmt::Display for CellTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn cone_value(c: &MeasureCoeffs) -> Rational {
    c.cone_value()
}

pub fn is_positive(c: &MeasureCoeffs) -> bool {
    c.is_positive()
}

/// `(nu_0, nu_1, nu_2)(F_w SG) = M_w (2,2,2)`.
pub fn basis_masses(w: &Word) -> Vec3 {
    word_matrix(Family::M, w).apply(&Vec3::from_ints([2, 2, 2]))
}

pub fn measure_of_cell(c: &MeasureCoeffs, w: &Word) -> Rational {
    c.0.dot(&basis_masses(w))
}

/// `nu_c(F_w F_j SG)` for `j = 0, 1, 2`, via `M_w M_j (2,2,2)`.
pub fn children_triple(c: &MeasureCoeffs, w: &Word) -> CellTriple {
    let row = word_matrix(Family::M, w).left_apply(&c.0);
    let two = Vec3::from_ints([2, 2, 2]);
    CellTriple(Vec3(std::array::from_fn(|j| {
        row.dot(&generator(Family::M, j as Letter).apply(&two))
    })))
}

/// The same triple through `E_w` applied to the level-1 triple.
pub fn children_triple_via_e(c: &MeasureCoeffs, w: &Word) -> CellTriple {
    CellTriple(word_matrix(Family::E, w).apply(&level1_from_coeffs(c).0))
}

/// Level-1 triple `(2/5) [[3,1,1],[1,3,1],[1,1,3]] a`.
pub fn level1_from_coeffs(c: &MeasureCoeffs) -> CellTriple {
    let l = Mat3::from_ints([[6, 2, 2], [2, 6, 2], [2, 2, 6]], 5);
    CellTriple(l.apply(&c.0))
}

/// `nu(F_i F_w SG) - [(1/15) nu(F_w SG) + (12/15) nu_i(F_w SG)]`, always zero.
pub fn selfsim_identity_gap(w: &Word, i: Letter) -> Result<Rational> {
    let lhs = measure_of_cell(&MeasureCoeffs::kusuoka(), &w.prepend(i)?);
    let masses = basis_masses(w);
    let rhs = rat(1, 15) * masses.sum() + rat(12, 15) * &masses[i as usize];
    Ok(lhs - rhs)
}

/// Exact part of a decomposition, present when the discriminant is a rational square.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDecomposition {
    pub t: Rational,
    pub p: MeasureCoeffs,
    pub q: MeasureCoeffs,
}

/// `c = t p + (1 - t) q` with `p`, `q` on the cone boundary and `p + q` a
/// nonnegative multiple of `(1,1,1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub t: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub exact: Option<ExactDecomposition>,
}

impl Decomposition {
    /// Max-norm of `c - t p - (1 - t) q`.
    pub fn residual(&self, c: &MeasureCoeffs) -> f64 {
        let c = c.to_f64();
        (0..3)
            .map(|i| (c[i] - self.t * self.p[i] - (1.0 - self.t) * self.q[i]).abs())
            .fold(0.0, f64::max)
    }
}

fn exact_decomposition(t: Rational, p: MeasureCoeffs, q: MeasureCoeffs) -> Decomposition {
    Decomposition {
        t: rational::to_f64(&t),
        p: p.to_f64(),
        q: q.to_f64(),
        exact: Some(ExactDecomposition { t, p, q }),
    }
}

/// Splits a positive energy measure into two single-harmonic measures.
///
/// The line `c + s (1,1,1)` meets the cone boundary where
/// `3 s^2 + 2 sigma_1 s + sigma_2 = 0`; the two roots give `p` and `q`.
/// For `c = k (1,1,1)` the fixed pair `p = 3k (1,0,0)`, `q = k (-1,2,2)`, `t = 1/2` is returned.
pub fn decompose_positive(c: &MeasureCoeffs) -> Result<Decomposition> {
    if !c.is_positive() {
        return Err(Error::NotPositive {
            cone: rational::format(&c.cone_value()),
        });
    }
    let a = &c.0;
    if a[0] == a[1] && a[1] == a[2] {
        let k = a[0].clone();
        return Ok(exact_decomposition(
            rat(1, 2),
            MeasureCoeffs(Vec3::from_ints([3, 0, 0]).scale(&k)),
            MeasureCoeffs(Vec3::from_ints([-1, 2, 2]).scale(&k)),
        ));
    }
    let s1 = a.sum();
    let s2 = c.cone_value();
    let disc = &s1 * &s1 - int(3) * &s2;
    if let Some(root) = rational::exact_sqrt(&disc) {
        let r1 = (-&s1 + &root) / int(3);
        let r2 = (-&s1 - &root) / int(3);
        let t = &r2 / (&r1 + &r2);
        let lambda = int(1) / (int(2) * &t - int(1));
        let p = (a + &Vec3::ones().scale(&r1)).scale(&lambda);
        let q = (a + &Vec3::ones().scale(&r2)).scale(&-&lambda);
        return Ok(exact_decomposition(t, MeasureCoeffs(p), MeasureCoeffs(q)));
    }
    let af = c.to_f64();
    let (s1, disc) = (rational::to_f64(&s1), rational::to_f64(&disc));
    let root = disc.sqrt();
    let r1 = (-s1 + root) / 3.0;
    let r2 = (-s1 - root) / 3.0;
    let t = r2 / (r1 + r2);
    let lambda = 1.0 / (2.0 * t - 1.0);
    Ok(Decomposition {
        t,
        p: af.map(|x| lambda * (x + r1)),
        q: af.map(|x| -lambda * (x + r2)),
        exact: None,
    })
}

/// First cell (by level, then lexicographically) of level `<= max_depth`
/// on which `nu_c` is negative.
pub fn negative_cell_witness(c: &MeasureCoeffs, max_depth: usize) -> Option<(Word, Rational)> {
    // rows c^T M_w; nu_c(F_w SG) = 2 * sum(row)
    let mut level = vec![(Word::empty(), c.0.clone())];
    for depth in 0..=max_depth {
        for (w, row) in &level {
            let v = row.sum() * int(2);
            if v.is_negative() {
                return Some((w.clone(), v));
            }
        }
        if depth == max_depth {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * 3);
        for (w, row) in &level {
            for j in 0..3 {
                let child = w.child(j).ok()?;
                next.push((child, generator(Family::M, j).left_apply(row)));
            }
        }
        level = next;
    }
    None
}

/// Smallest value of `nu_c` over all cells of level `<= max_depth`, with a witness.
pub fn min_cell_value(c: &MeasureCoeffs, max_depth: usize) -> (Word, Rational) {
    let mut best = (Word::empty(), c.total_mass());
    let mut stack = vec![(Word::empty(), c.0.clone())];
    while let Some((w, row)) = stack.pop() {
        let v = row.sum() * int(2);
        if v < best.1 || (v == best.1 && w < best.0) {
            best = (w.clone(), v);
        }
        if w.len() < max_depth {
            for j in (0..3).rev() {
                if let Ok(child) = w.child(j) {
                    stack.push((child, generator(Family::M, j).left_apply(&row)));
                }
            }
        }
    }
    best
}

/// The Kusuoka child triple `(x,y,z)` of `F_w` satisfies `14x - y - z > 0`; returns that value.
pub fn strictness_margin(w: &Word) -> Rational {
    let t = children_triple(&MeasureCoeffs::kusuoka(), w).0;
    int(14) * &t[0] - &t[1] - &t[2]
}
