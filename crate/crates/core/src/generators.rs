//! The generator families `M_i` (basis masses) and `E_i` (Kusuoka-type
//! child triples), word products, and the rank-one limits `A_j`.
//!
//! Conventions:
//!
//! * `M` acts by prepending a letter: `(nu_0, nu_1, nu_2)(F_w SG) = M_{w_1}...M_{w_m} (2,2,2)`.
//! * `E` acts by appending a letter: the child triple of `F_{w i}` is `E_i` times
//!   the child triple of `F_w`, so `E_w = E_{w_m}...E_{w_1}`.

use std::sync::OnceLock;

use crate::linalg::{Mat3, Vec3};
use crate::rational::{int, rat, Rational};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    E,
    M,
}

impl std::str::FromStr for Family {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "E" | "e" => Ok(Family::E),
            "M" | "m" => Ok(Family::M),
            other => Err(crate::Error::parse("family", other, "expected E or M")),
        }
    }
}

fn build_m() -> [Mat3; 3] {
    [
        Mat3::from_ints([[9, 0, 0], [2, 2, -1], [2, -1, 2]], 15),
        Mat3::from_ints([[2, 2, -1], [0, 9, 0], [-1, 2, 2]], 15),
        Mat3::from_ints([[2, -1, 2], [-1, 2, 2], [0, 0, 9]], 15),
    ]
}

/// Factors `P_i`, `Q_i` with `E_i = P_i diag(1/15, 3/5, 1/5) Q_i`.
pub fn e_factors(i: Letter) -> (Mat3, Mat3) {
    let base_p = [[rat(1, 7), int(3), int(0)], [int(1), int(1), int(-1)], [int(1), int(1), int(1)]];
    let base_q = [
        [rat(-7, 20), rat(21, 40), rat(21, 40)],
        [rat(7, 20), rat(-1, 40), rat(-1, 40)],
        [int(0), rat(-1, 2), rat(1, 2)],
    ];
    // P_1, P_2 move the distinguished row; Q_1, Q_2 move the distinguished column.
    let rows: [usize; 3] = match i {
        0 => [0, 1, 2],
        1 => [1, 0, 2],
        _ => [1, 2, 0],
    };
    let p = Mat3(std::array::from_fn(|r| base_p[rows[r]].clone()));
    let q = Mat3(std::array::from_fn(|r| {
        std::array::from_fn(|c| base_q[r][rows[c]].clone())
    }));
    (p, q)
}

/// Eigenvalues of every `E_i`, in the order used by [`e_factors`].
pub fn e_eigenvalues() -> [Rational; 3] {
    [rat(1, 15), rat(3, 5), rat(1, 5)]
}

fn build_e() -> [Mat3; 3] {
    std::array::from_fn(|i| {
        let (p, q) = e_factors(i as Letter);
        &(&p * &Mat3::diagonal(e_eigenvalues())) * &q
    })
}

static M_GEN: OnceLock<[Mat3; 3]> = OnceLock::new();
static E_GEN: OnceLock<[Mat3; 3]> = OnceLock::new();

pub fn generator(family: Family, i: Letter) -> &'static Mat3 {
    let gens = match family {
        Family::M => M_GEN.get_or_init(build_m),
        Family::E => E_GEN.get_or_init(build_e),
    };
    &gens[i as usize]
}

/// `M_w = M_{w_1}...M_{w_m}` or `E_w = E_{w_m}...E_{w_1}`; identity for the empty word.
pub fn word_matrix(family: Family, w: &Word) -> Mat3 {
    let mut acc = Mat3::identity();
    for &l in w.letters() {
        let g = generator(family, l);
        acc = match family {
            Family::M => &acc * g,
            Family::E => g * &acc,
        };
    }
    acc
}

/// Limit row `rho_j`: 14 at position `j`, -1 elsewhere.
pub fn limit_row(j: Letter) -> Vec3 {
    let mut v = [-1; 3];
    v[j as usize] = 14;
    Vec3::from_ints(v)
}

/// Column `u_j = (1,1,1 with 3 at j) / 40`.
pub fn limit_column(j: Letter) -> Vec3 {
    let mut v = [1; 3];
    v[j as usize] = 3;
    Vec3::from_ints(v).scale(&rat(1, 40))
}

/// `A_j = lim (5/3)^n E_j^n = u_j rho_j^T`.
pub fn limit_matrix(j: Letter) -> Mat3 {
    Mat3::outer(&limit_column(j), &limit_row(j))
}

/// The same limit read off the eigendecomposition: `P_j diag(0,1,0) Q_j`.
pub fn limit_matrix_from_factors(j: Letter) -> Mat3 {
    let (p, q) = e_factors(j);
    Mat3::outer(&p.column(1), &q.row(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m0_matches_table() {
        let w: Word = "0".parse().unwrap();
        assert_eq!(
            word_matrix(Family::M, &w),
            Mat3::from_ints([[9, 0, 0], [2, 2, -1], [2, -1, 2]], 15)
        );
        assert_eq!(word_matrix(Family::M, &Word::empty()), Mat3::identity());
    }

    #[test]
    fn factors_are_inverse() {
        for i in 0..3 {
            let (p, q) = e_factors(i);
            assert_eq!(&p * &q, Mat3::identity());
        }
    }

    #[test]
    fn e0_multiplied_out() {
        let e0 = generator(Family::E, 0);
        let expect = Mat3([
            [rat(47, 75), rat(-1, 25), rat(-1, 25)],
            [rat(14, 75), rat(3, 25), rat(-2, 25)],
            [rat(14, 75), rat(-2, 25), rat(3, 25)],
        ]);
        assert_eq!(e0, &expect);
        // column sums applied to (2,2,2) stay at total mass 2
        let v = e0.apply(&Vec3::from_ints([2, 2, 2]));
        assert_eq!(v.sum(), int(2));
    }

    #[test]
    fn e_generators_are_rotations_of_each_other() {
        let e0 = generator(Family::E, 0);
        let e1 = generator(Family::E, 1);
        let e2 = generator(Family::E, 2);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(e0.entry(r, c), e1.entry((r + 1) % 3, (c + 1) % 3));
                assert_eq!(e0.entry(r, c), e2.entry((r + 2) % 3, (c + 2) % 3));
            }
        }
    }

    #[test]
    fn limits_agree_and_are_eigen() {
        for j in 0..3 {
            let a = limit_matrix(j);
            assert_eq!(a, limit_matrix_from_factors(j));
            let lhs = (generator(Family::E, j) * &a).scale(&rat(5, 3));
            assert_eq!(lhs, a);
        }
    }

    #[test]
    fn e_word_order() {
        let w: Word = "01".parse().unwrap();
        let expect = generator(Family::E, 1) * generator(Family::E, 0);
        assert_eq!(word_matrix(Family::E, &w), expect);
    }
}
