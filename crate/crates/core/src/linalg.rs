//! Exact 3-vectors and 3x3 matrices over [`Rational`].

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec3(pub [Rational; 3]);

impl Vec3 {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Vec3([a, b, c])
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Vec3(v.map(int))
    }

    pub fn zero() -> Self {
        Vec3::from_ints([0, 0, 0])
    }

    pub fn ones() -> Self {
        Vec3::from_ints([1, 1, 1])
    }

    /// Unit vector along axis `i`.
    pub fn unit(i: usize) -> Self {
        let mut v = [0; 3];
        v[i] = 1;
        Vec3::from_ints(v)
    }

    pub fn dot(&self, other: &Vec3) -> Rational {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn scale(&self, k: &Rational) -> Vec3 {
        Vec3(self.0.clone().map(|x| x * k))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            rational::to_f64(&self.0[0]),
            rational::to_f64(&self.0[1]),
            rational::to_f64(&self.0[2]),
        ]
    }
}

impl Index<usize> for Vec3 {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: &Vec3) -> Vec3 {
        Vec3([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.clone().map(|x| -x))
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Row-major 3x3 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[Rational; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1)
    }

    pub fn zero() -> Self {
        Mat3::from_ints([[0; 3]; 3], 1)
    }

    /// `(1/den) * entries`.
    pub fn from_ints(entries: [[i64; 3]; 3], den: i64) -> Self {
        Mat3(entries.map(|row| row.map(|x| rational::rat(x, den))))
    }

    pub fn diagonal(d: [Rational; 3]) -> Self {
        let [a, b, c] = d;
        let z = Rational::zero;
        Mat3([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// Outer product `u v^T`.
    pub fn outer(u: &Vec3, v: &Vec3) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| &u.0[i] * &v.0[j])))
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3(self.0[i].clone())
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3([self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone()])
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn scale(&self, k: &Rational) -> Mat3 {
        Mat3(self.0.clone().map(|row| row.map(|x| x * k)))
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|i| self.row(i).dot(v)))
    }

    /// Row vector times matrix, `v^T A`.
    pub fn left_apply(&self, v: &Vec3) -> Vec3 {
        Vec3(std::array::from_fn(|j| {
            (0..3).map(|i| &v.0[i] * &self.0[i][j]).sum()
        }))
    }

    pub fn column_sums(&self) -> Vec3 {
        self.left_apply(&Vec3::ones())
    }

    pub fn entry_sum(&self) -> Rational {
        self.0.iter().flat_map(|r| r.iter()).sum()
    }

    /// Operator 1-norm: the largest absolute column sum.
    pub fn norm1(&self) -> Rational {
        (0..3)
            .map(|j| (0..3).map(|i| self.0[i][j].abs()).sum::<Rational>())
            .max()
            .expect("three columns")
    }

    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| rational::to_f64(&self.0[i][j])))
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &self.0[i][k] * &rhs.0[k][j]).sum())
        }))
    }
}

impl Mul<&Vec3> for &Mat3 {
    type Output = Vec3;
    fn mul(self, rhs: &Vec3) -> Vec3 {
        self.apply(rhs)
    }
}

impl Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][j] - &rhs.0[i][j])
        }))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}
