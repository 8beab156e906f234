//! Harmonic functions on SG, stored as their values on `q_0, q_1, q_2`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::measures::MeasureCoeffs;
use crate::rational::{self, int, rat, Rational};
use crate::word::{Letter, VertexAddress, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Harmonic {
    pub boundary: Vec3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Constant,
    SymmetricAbout(Letter),
    SkewSymmetricAbout(Letter),
    None,
}

impl Harmonic {
    pub fn new(v0: Rational, v1: Rational, v2: Rational) -> Self {
        Harmonic {
            boundary: Vec3::new(v0, v1, v2),
        }
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Harmonic {
            boundary: Vec3::from_ints(v),
        }
    }

    /// `h_i` with `h_i(q_j) = delta_ij`.
    pub fn basis(i: Letter) -> Self {
        Harmonic {
            boundary: Vec3::unit(i as usize),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Harmonic::new(c.clone(), c.clone(), c)
    }

    pub fn value(&self, corner: Letter) -> &Rational {
        &self.boundary[corner as usize]
    }

    pub fn is_constant(&self) -> bool {
        let b = &self.boundary;
        b[0] == b[1] && b[1] == b[2]
    }

    /// Boundary values of `h o F_j`.
    pub fn restrict(&self, j: Letter) -> Harmonic {
        let b = &self.boundary;
        let j = j as usize;
        let vals = std::array::from_fn(|k| {
            if k == j {
                b[j].clone()
            } else {
                let l = 3 - j - k;
                (&b[j] * rat(2, 5)) + (&b[k] * rat(2, 5)) + (&b[l] * rat(1, 5))
            }
        });
        Harmonic {
            boundary: Vec3(vals),
        }
    }

    /// Boundary values of `h o F_w`.
    pub fn extend_to_cell(&self, w: &Word) -> Harmonic {
        w.letters().iter().fold(self.clone(), |h, &j| h.restrict(j))
    }

    /// Level-0 energy `E(h) = sum_{i<j} (h(q_i) - h(q_j))^2`.
    pub fn energy(&self) -> Rational {
        energy_inner(self, self)
    }
}

impl fmt::Display for Harmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.boundary)
    }
}

impl FromStr for Harmonic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse("harmonic", s, "expected three comma-separated values"));
        }
        Ok(Harmonic::new(
            rational::parse(parts[0])?,
            rational::parse(parts[1])?,
            rational::parse(parts[2])?,
        ))
    }
}

/// `sum_{i<j} (u_i - u_j)(v_i - v_j)` on boundary values.
pub fn energy_inner(u: &Harmonic, v: &Harmonic) -> Rational {
    let (a, b) = (&u.boundary, &v.boundary);
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| (&a[i] - &a[j]) * (&b[i] - &b[j]))
        .sum()
}

/// `(5/3)^|w| E(h o F_w)`, the energy measure `nu_h(F_w SG)`.
pub fn cell_energy(h: &Harmonic, w: &Word) -> Rational {
    rational::pow(&rat(5, 3), w.len()) * h.extend_to_cell(w).energy()
}

/// Values of `h` on every canonical vertex of `V_m`.
pub fn harmonic_vertex_values(h: &Harmonic, m: usize) -> Result<HashMap<VertexAddress, Rational>> {
    let mut out = HashMap::new();
    let mut stack = vec![(Word::empty(), h.clone())];
    while let Some((w, g)) = stack.pop() {
        for j in 0..3 {
            let v = VertexAddress::new(w.clone(), j)?.canonicalize();
            out.insert(v, g.value(j).clone());
        }
        if w.len() < m {
            for j in 0..3 {
                stack.push((w.child(j)?, g.restrict(j)));
            }
        }
    }
    Ok(out)
}

/// `(5/3)^m sum_{|w|=m} sum_{i<j} (u(F_w q_i) - u(F_w q_j))^2` over supplied vertex values.
pub fn graph_energy(values: &HashMap<VertexAddress, Rational>, m: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    for w in Word::all_of_length(m)? {
        let mut vals = Vec::with_capacity(3);
        for j in 0..3 {
            let v = VertexAddress::new(w.clone(), j)?.canonicalize();
            let x = values.get(&v).ok_or(Error::IncompleteAssignment(v))?;
            vals.push(x);
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let d = vals[i] - vals[j];
            total += &d * &d;
        }
    }
    Ok(total * rational::pow(&rat(5, 3), m))
}

/// Coefficients of `nu_{u,v}` in the basis `(nu_0, nu_1, nu_2)`.
///
/// With `u = sum c_i h_i`, `v = sum d_j h_j`, the cross measures are
/// `nu_{h_i,h_j} = (nu_k - nu_i - nu_j) / 2` for `{i,j,k} = {0,1,2}`.
pub fn measure_coeffs(u: &Harmonic, v: &Harmonic) -> MeasureCoeffs {
    let (c, d) = (&u.boundary, &v.boundary);
    let mut a: [Rational; 3] = std::array::from_fn(|i| &c[i] * &d[i]);
    let half = rat(1, 2);
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let k = 3 - i - j;
        let w = (&c[i] * &d[j] + &c[j] * &d[i]) * &half;
        a[k] += &w;
        a[i] -= &w;
        a[j] -= &w;
    }
    MeasureCoeffs(Vec3(a))
}

/// Coefficients of `nu_{h_perp} = (E(h)/3) nu - nu_h`.
pub fn complement_coeffs(h: &Harmonic) -> Result<MeasureCoeffs> {
    if h.is_constant() {
        return Err(Error::ConstantHarmonic);
    }
    let k = h.energy() / int(3);
    let own = measure_coeffs(h, h);
    Ok(MeasureCoeffs(&Vec3::ones().scale(&k) - &own.0))
}

/// Symmetry of `h o F_w` on the cell boundary.
pub fn classify_symmetry(h: &Harmonic, w: &Word) -> SymmetryClass {
    let g = h.extend_to_cell(w);
    if g.is_constant() {
        return SymmetryClass::Constant;
    }
    let b = &g.boundary;
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if b[j] == b[k] {
            return SymmetryClass::SymmetricAbout(i as Letter);
        }
        if &b[i] * int(2) == &b[j] + &b[k] {
            return SymmetryClass::SkewSymmetricAbout(i as Letter);
        }
    }
    SymmetryClass::None
}

/// `max - min` of `h` on the boundary of `F_w SG`.
pub fn oscillation(h: &Harmonic, w: &Word) -> Rational {
    let g = h.extend_to_cell(w);
    let max = g.boundary.iter().max().expect("three values").clone();
    let min = g.boundary.iter().min().expect("three values").clone();
    max - min
}
