//! The weighted-average vectors `b^(w)`: the average of any derivative
//! `d nu_c / d nu` over `F_w SG` is `sum_j b_j^(w) R(F_w q_j)`.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::derivatives::rn_derivative;
use crate::error::{Error, Result};
use crate::generators::{word_matrix, Family};
use crate::linalg::Vec3;
use crate::measures::{children_triple, measure_of_cell, MeasureCoeffs};
use crate::rational::{self, int, rat, Rational};
use crate::word::{Letter, VertexAddress, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BVector(pub Vec3);

impl BVector {
    /// `(1/3, 1/3, 1/3)`, the vector of the empty word.
    pub fn center() -> Self {
        BVector(Vec3::ones().scale(&rat(1, 3)))
    }

    pub fn get(&self, j: Letter) -> &Rational {
        &self.0[j as usize]
    }

    /// `sum_j (b_j - 1/3)^2`.
    pub fn deviation(&self) -> Rational {
        let third = rat(1, 3);
        self.0.iter().map(|b| {
            let d = b - &third;
            &d * &d
        }).sum()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.to_f64()
    }
}

impl fmt::Display for BVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `b_j = 1/6 + (1/2) colsum_j(M_w) / total(M_w)`.
pub fn b_from_m(w: &Word) -> BVector {
    let m = word_matrix(Family::M, w);
    let cols = m.column_sums();
    let total = cols.sum();
    BVector(Vec3(std::array::from_fn(|j| {
        rat(1, 6) + &cols[j] / (&total * int(2))
    })))
}

/// One subdivision step `b^(w) -> b^(w j)`; for `j = 0`
/// `(9 b_0, 2 b_0 + 2 b_1 - b_2, 2 b_0 - b_1 + 2 b_2) / (13 b_0 + b_1 + b_2)`.
pub fn b_step(b: &BVector, j: Letter) -> BVector {
    let j = j as usize;
    let (k, l) = ((j + 1) % 3, (j + 2) % 3);
    let v = &b.0;
    let den = int(13) * &v[j] + &v[k] + &v[l];
    let mut out: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
    out[j] = int(9) * &v[j] / &den;
    out[k] = (int(2) * &v[j] + int(2) * &v[k] - &v[l]) / &den;
    out[l] = (int(2) * &v[j] - &v[k] + int(2) * &v[l]) / &den;
    BVector(Vec3(out))
}

/// `b_step` folded over the letters of `w`, starting at the center.
pub fn b_iterated(w: &Word) -> BVector {
    w.letters().iter().fold(BVector::center(), |b, &j| b_step(&b, j))
}

/// `b_j = 1/3 + (5/4)(nu(F_w F_j SG) / nu(F_w SG) - 1/3)`.
pub fn b_from_kusuoka(w: &Word) -> BVector {
    let t = children_triple(&MeasureCoeffs::kusuoka(), w).0;
    let total = t.sum();
    let third = rat(1, 3);
    BVector(Vec3(std::array::from_fn(|j| {
        &third + rat(5, 4) * (&t[j] / &total - &third)
    })))
}

/// Cell average of `d nu_c / d nu` minus the `b`-weighted vertex values; always zero.
pub fn weighted_average_gap(c: &MeasureCoeffs, w: &Word) -> Result<Rational> {
    let avg = measure_of_cell(c, w) / measure_of_cell(&MeasureCoeffs::kusuoka(), w);
    let b = b_from_m(w);
    let mut weighted = Rational::zero();
    for j in 0..3 {
        let v = VertexAddress::new(w.clone(), j)?;
        weighted += b.get(j) * rn_derivative(c, &v);
    }
    Ok(avg - weighted)
}

/// `a_j = 2 (b_j - 1/6)`.
pub fn a_values(b: &BVector) -> Vec3 {
    let sixth = rat(1, 6);
    Vec3(std::array::from_fn(|j| int(2) * (&b.0[j] - &sixth)))
}

/// `nu(F_{w j} SG) / nu(F_w SG) = (2/5)(a_j + 1/2)`.
pub fn kusuoka_ratio(a_j: &Rational) -> Rational {
    rat(2, 5) * (a_j + rat(1, 2))
}

/// `b^(0^m) = (2/3 - 2/(3(3^{2m}+1)), 1/(3(3^{2m}+1)) + 1/6, same)`.
pub fn closed_form_b(m: usize) -> BVector {
    let d = int(3) * (rational::pow(&int(9), m) + int(1));
    let b0 = rat(2, 3) - int(2) / &d;
    let b1 = int(1) / &d + rat(1, 6);
    BVector(Vec3::new(b0, b1.clone(), b1))
}

/// `c_0 c_1 + c_1 c_2 + c_0 c_2` for the column sums `c = (1,1,1) M_w`.
pub fn column_sum_cone(w: &Word) -> Rational {
    let c = word_matrix(Family::M, w).column_sums();
    &c[0] * &c[1] + &c[1] * &c[2] + &c[0] * &c[2]
}

pub const MAX_SCAN_LEVEL: usize = 12;

/// `b^(w)` for every `|w| = m`, in lexicographic order.
pub fn level_scan(m: usize) -> Result<Vec<(Word, BVector)>> {
    if m > MAX_SCAN_LEVEL {
        return Err(Error::DepthLimit {
            requested: m,
            max: MAX_SCAN_LEVEL,
        });
    }
    let words = Word::all_of_length(m)?;
    Ok(words
        .into_par_iter()
        .map(|w| {
            let b = b_from_m(&w);
            (w, b)
        })
        .collect())
}

/// CSV for [`level_scan`]: exact rationals with float twins.
pub fn level_scan_csv(rows: &[(Word, BVector)]) -> String {
    let mut out = String::from("word,b0,b1,b2,b0_f,b1_f,b2_f\n");
    for (w, b) in rows {
        let f = b.to_f64();
        out.push_str(&format!(
            "{w},{},{},{},{},{},{}\n",
            b.0[0], b.0[1], b.0[2], f[0], f[1], f[2]
        ));
    }
    out
}
