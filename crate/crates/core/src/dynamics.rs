//! Floating-point laboratory for the maps `B_0, B_1, B_2` acting on the
//! b-vector disk, their boundary circle maps `g_j`, and level-`m` point clouds.
//!
//! Two coordinate systems are used. A b-point is a unit-sum triple; the disk
//! `sum (b_j - 1/3)^2 <= 1/6` is mapped onto the unit disk by
//! `x = 3 (b_0 - 1/3)`, `y = sqrt(3) (b_1 - b_2)`. The angle `theta` is the
//! polar angle of `(x, y)`, and `r = |(x, y)| / sqrt(6)` is the Euclidean
//! distance of `b` from the center `(1/3, 1/3, 1/3)`.
//!
//! Cloud enumeration works on b-points, where `B_1` and `B_2` are the cyclic
//! relabelings of `B_0`; that makes the cloud exactly invariant under the
//! rotation by `2 pi / 3`, and the angular binning below preserves it.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;

use crate::error::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_6: f64 = 2.449_489_742_783_178;
const TWO_PI_3: f64 = 2.0 * PI / 3.0;

/// Tolerance for "inside the closed disk" and "on the circle".
pub const DISK_TOLERANCE: f64 = 1e-9;

/// Radius of the b-disk, `1 / sqrt(6)`.
pub fn b_disk_radius() -> f64 {
    1.0 / SQRT_6
}

/// A b-point: a unit-sum triple.
pub type BPoint = [f64; 3];

/// Point of the disk in unit-disk coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Self {
        DiskPoint { x, y }
    }

    pub fn center() -> Self {
        DiskPoint { x: 0.0, y: 0.0 }
    }

    pub fn from_b(b: BPoint) -> Self {
        DiskPoint {
            x: 3.0 * (b[0] - 1.0 / 3.0),
            y: SQRT_3 * (b[1] - b[2]),
        }
    }

    pub fn to_b(self) -> BPoint {
        let t = 1.0 / 3.0;
        let s = self.y / (2.0 * SQRT_3);
        [t + self.x / 3.0, t - self.x / 6.0 + s, t - self.x / 6.0 - s]
    }

    /// From b-disk polar coordinates `(r, theta)`, `0 <= r <= 1/sqrt(6)`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        let rho = r * SQRT_6;
        DiskPoint {
            x: rho * theta.cos(),
            y: rho * theta.sin(),
        }
    }

    /// `(r, theta)` with `r` the b-disk radius and `theta` in `(-pi, pi]`.
    pub fn to_polar(self) -> (f64, f64) {
        (self.unit_radius() / SQRT_6, self.y.atan2(self.x))
    }

    /// Radius in unit-disk coordinates.
    pub fn unit_radius(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation by `angle` about the center.
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        DiskPoint {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    /// Coordinates in the frame of `B_j`: rotated by `-2 pi j / 3`.
    fn frame(self, j: u8) -> Self {
        match j {
            0 => self,
            _ => self.rotate(-TWO_PI_3 * j as f64),
        }
    }

    fn distance(self, other: DiskPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

fn check_map(j: u8) -> Result<()> {
    if j > 2 {
        Err(Error::InvalidLetter(j))
    } else {
        Ok(())
    }
}

/// `B_0(x, y) = ((5x + 4)/(4x + 5), 3y/(4x + 5))`.
fn b0_unit(p: DiskPoint) -> DiskPoint {
    let d = 4.0 * p.x + 5.0;
    DiskPoint {
        x: (5.0 * p.x + 4.0) / d,
        y: 3.0 * p.y / d,
    }
}

/// `B_j` in unit-disk coordinates; `B_1`, `B_2` are `B_0` conjugated by rotations of `+-2 pi / 3`.
pub fn apply_b(j: u8, p: DiskPoint) -> Result<DiskPoint> {
    check_map(j)?;
    let rho = p.unit_radius();
    if rho > 1.0 + DISK_TOLERANCE {
        return Err(Error::OutsideDisk { radius: rho });
    }
    Ok(match j {
        0 => b0_unit(p),
        _ => b0_unit(p.frame(j)).rotate(TWO_PI_3 * j as f64),
    })
}

/// `B_j` on b-points: `b_j' = 9 b_j / D`, `b_k' = (2 b_j + 2 b_k - b_l) / D`,
/// `b_l' = (2 b_j - b_k + 2 b_l) / D`, `D = 13 b_j + b_k + b_l`, with `(j, k, l)` cyclic.
pub fn b_step_f64(b: &BPoint, j: u8) -> BPoint {
    let j = j as usize;
    let (k, l) = ((j + 1) % 3, (j + 2) % 3);
    let (bj, bk, bl) = (b[j], b[k], b[l]);
    let d = 13.0 * bj + bk + bl;
    let mut out = [0.0; 3];
    out[j] = 9.0 * bj / d;
    out[k] = (2.0 * bj + 2.0 * bk - bl) / d;
    out[l] = (2.0 * bj - bk + 2.0 * bl) / d;
    out
}

/// Wraps an angle into `[0, 2 pi)`.
pub fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(2.0 * PI);
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

/// Wraps an angle into `(-pi, pi]`.
fn wrap_signed(t: f64) -> f64 {
    let w = wrap_angle(t);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn shift(j: u8) -> f64 {
    TWO_PI_3 * j as f64
}

/// `g_0(theta) = atan2(3 sin theta, 5 cos theta + 4)`, the angle of `B_0` on the circle.
fn g0(theta: f64) -> f64 {
    (3.0 * theta.sin()).atan2(5.0 * theta.cos() + 4.0)
}

/// `g_0(theta) = 2 atan(tan(theta / 2) / 3)`, extended by `g_0(pi) = pi`.
fn g0_closed(theta: f64) -> f64 {
    let t = wrap_signed(theta);
    if t == PI {
        PI
    } else {
        2.0 * ((t / 2.0).tan() / 3.0).atan()
    }
}

/// `g_0^{-1}(alpha) = 2 atan(3 tan(alpha / 2))`, extended by `g_0^{-1}(pi) = pi`.
fn g0_inverse(alpha: f64) -> f64 {
    let a = wrap_signed(alpha);
    if a == PI {
        PI
    } else {
        2.0 * (3.0 * (a / 2.0).tan()).atan()
    }
}

/// `g_j(theta)` in `[0, 2 pi)`, via the angle of the image of the circle point.
pub fn circle_map(j: u8, theta: f64) -> Result<f64> {
    check_map(j)?;
    Ok(wrap_angle(g0(theta - shift(j)) + shift(j)))
}

/// `g_j(theta)` in `[0, 2 pi)`, via the half-angle closed form.
pub fn circle_map_closed(j: u8, theta: f64) -> Result<f64> {
    check_map(j)?;
    Ok(wrap_angle(g0_closed(theta - shift(j)) + shift(j)))
}

/// `g_j^{-1}(alpha)` in `[0, 2 pi)`.
pub fn circle_map_inverse(j: u8, alpha: f64) -> Result<f64> {
    check_map(j)?;
    Ok(wrap_angle(g0_inverse(alpha - shift(j)) + shift(j)))
}

/// `g_j'(theta) = 3 / (4 cos(theta - 2 pi j / 3) + 5)`.
pub fn circle_map_derivative(j: u8, theta: f64) -> Result<f64> {
    check_map(j)?;
    Ok(3.0 / (4.0 * (theta - shift(j)).cos() + 5.0))
}

/// `1 / g_j'(g_j^{-1}(t)) = 3 / (5 - 4 cos(t - 2 pi j / 3))`.
pub fn inverse_weight(j: u8, t: f64) -> f64 {
    3.0 / (5.0 - 4.0 * (t - shift(j)).cos())
}

/// The two fixed points of `g_j` on the circle, in `[0, 2 pi)`.
pub fn boundary_fixed_points(j: u8) -> Result<[f64; 2]> {
    check_map(j)?;
    Ok([wrap_angle(shift(j)), wrap_angle(shift(j) + PI)])
}

/// Grid points of the open disk (unit radius `< 1 - margin`) moved by less
/// than `tol` under `B_j`, on an `n x n` grid over `[-1, 1]^2`.
pub fn interior_fixed_point_search(j: u8, n: usize, margin: f64, tol: f64) -> Result<Vec<DiskPoint>> {
    check_map(j)?;
    let mut hits = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let p = DiskPoint::new(
                -1.0 + 2.0 * (a as f64 + 0.5) / n as f64,
                -1.0 + 2.0 * (b as f64 + 0.5) / n as f64,
            );
            if p.unit_radius() >= 1.0 - margin {
                continue;
            }
            if apply_b(j, p)?.distance(p) < tol {
                hits.push(p);
            }
        }
    }
    Ok(hits)
}

/// `|gamma^2 - 1/6 - 9 (r^2 - 1/6) / (4 sqrt(6) r cos(theta - 2 pi j / 3) + 5)^2|`,
/// with `gamma` the b-disk radius of `B_j(r, theta)`.
pub fn gamma_residual(r: f64, theta: f64, j: u8) -> Result<f64> {
    let img = apply_b(j, DiskPoint::from_polar(r, theta))?;
    let gamma = img.unit_radius() / SQRT_6;
    let d = 4.0 * SQRT_6 * r * (theta - shift(j)).cos() + 5.0;
    let lhs = gamma * gamma - 1.0 / 6.0;
    let rhs = 9.0 * (r * r - 1.0 / 6.0) / (d * d);
    Ok((lhs - rhs).abs())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangleReport {
    pub in_triangle: bool,
    /// Whether `B_j` strictly increases the radius.
    pub increases: [bool; 3],
}

impl TriangleReport {
    /// Inside `T` all three maps push outward; outside, at least two do.
    pub fn consistent(&self) -> bool {
        let n = self.increases.iter().filter(|&&b| b).count();
        if self.in_triangle {
            n == 3
        } else {
            n >= 2
        }
    }
}

/// `T` has vertices `(1,0)`, `(-1/2, +-sqrt(3)/2)`: the points whose
/// coordinate along each vertex direction exceeds `-1/2`.
pub fn triangle_check(p: DiskPoint) -> Result<TriangleReport> {
    let rho = p.unit_radius();
    if rho >= 1.0 {
        return Err(Error::OutsideDisk { radius: rho });
    }
    let in_triangle = (0..3).all(|j| p.frame(j).x > -0.5);
    let mut increases = [false; 3];
    for j in 0..3u8 {
        increases[j as usize] = apply_b(j, p)?.unit_radius() > rho;
    }
    Ok(TriangleReport {
        in_triangle,
        increases,
    })
}

pub const MAX_LEVEL: usize = 16;

fn check_level(m: usize) -> Result<()> {
    if m > MAX_LEVEL {
        Err(Error::DepthLimit {
            requested: m,
            max: MAX_LEVEL,
        })
    } else {
        Ok(())
    }
}

fn center_b() -> BPoint {
    [1.0 / 3.0; 3]
}

fn walk(b: BPoint, depth: usize, f: &mut impl FnMut(&BPoint)) {
    if depth == 0 {
        f(&b);
        return;
    }
    for j in 0..3 {
        walk(b_step_f64(&b, j), depth - 1, f);
    }
}

/// The b-point of the word `w`, folding `B_{w_1}, ..., B_{w_m}` from the center.
pub fn b_point_of(letters: &[u8]) -> BPoint {
    letters.iter().fold(center_b(), |b, &j| b_step_f64(&b, j))
}

/// Folds every level-`m` point into an accumulator. The level is split by
/// word prefixes processed in parallel; partial results are merged in prefix
/// order, so the outcome does not depend on the number of threads.
pub fn fold_level<A, I, F, M>(m: usize, init: I, fold: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &BPoint) + Sync,
    M: Fn(A, A) -> A,
{
    check_level(m)?;
    let split = m.min(5);
    let mut prefixes = vec![Vec::new()];
    for _ in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..3).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    let parts: Vec<A> = prefixes
        .par_iter()
        .map(|p| {
            let mut acc = init();
            walk(b_point_of(p), m - split, &mut |b| fold(&mut acc, b));
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().expect("at least one prefix");
    Ok(it.fold(first, merge))
}

/// All `3^m` b-points of level `m` in lexicographic word order.
pub fn enumerate_level(m: usize) -> Result<Vec<BPoint>> {
    fold_level(
        m,
        Vec::new,
        |v, b| v.push(*b),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )
}

/// Sector of a b-point: `0` when `b_2` is the (first) minimum, i.e.
/// `theta` in `[0, 2 pi / 3)`; sectors `1`, `2` are its cyclic relabelings.
/// The center is assigned to sector 0.
pub fn sector(b: &BPoint) -> usize {
    if b[0] <= b[2] && b[0] < b[1] {
        1
    } else if b[1] <= b[0] && b[1] < b[2] {
        2
    } else {
        0
    }
}

/// `(sector, u)` with `theta = (sector + u) 2 pi / 3` and `u` in `[0, 1)`.
pub fn sector_angle(b: &BPoint) -> (usize, f64) {
    let s = sector(b);
    // undo the relabeling (b0, b1, b2) -> (b2, b0, b1) s times
    let r = match s {
        0 => *b,
        1 => [b[1], b[2], b[0]],
        _ => [b[2], b[0], b[1]],
    };
    let p = DiskPoint::from_b(r);
    let phi = p.y.atan2(p.x);
    let u = (phi / TWO_PI_3).clamp(0.0, 1.0);
    (s, if u >= 1.0 { 1.0 - f64::EPSILON } else { u })
}

/// Euclidean distance of a b-point from the center.
pub fn b_radius(b: &BPoint) -> f64 {
    let t = 1.0 / 3.0;
    ((b[0] - t).powi(2) + (b[1] - t).powi(2) + (b[2] - t).powi(2)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Divided by the mean over the reported bins.
    #[default]
    MeanOne,
    /// Divided by the number of points in the cloud.
    Ratio,
}

/// Angular range reported by the angular and orbit histograms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Arc {
    /// `[0, 2 pi)`.
    Full,
    /// `[0, 2 pi / 3)`.
    #[default]
    Third,
    /// `[0, pi / 3)`.
    Sixth,
}

impl Arc {
    pub fn length(self) -> f64 {
        match self {
            Arc::Full => 2.0 * PI,
            Arc::Third => TWO_PI_3,
            Arc::Sixth => PI / 3.0,
        }
    }
}

impl std::str::FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Arc::Full),
            "third" => Ok(Arc::Third),
            "sixth" => Ok(Arc::Sixth),
            other => Err(Error::parse("arc", other, "expected full, third or sixth")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    /// `bins + 1` edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub normalization: Normalization,
    /// Size of the cloud the histogram was taken from; points outside the
    /// reported range are not counted.
    pub cloud_size: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn ingested(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn normalized(&self) -> Vec<f64> {
        let denom = match self.normalization {
            Normalization::MeanOne => self.ingested() as f64 / self.bins() as f64,
            Normalization::Ratio => self.cloud_size as f64,
        };
        self.counts
            .iter()
            .map(|&c| if denom > 0.0 { c as f64 / denom } else { 0.0 })
            .collect()
    }

    /// Sup-norm distance between the normalized values of two histograms with equal bins.
    pub fn sup_difference(&self, other: &Histogram) -> Result<f64> {
        if self.bins() != other.bins() {
            return Err(Error::InvalidArgument(format!(
                "histograms have {} and {} bins",
                self.bins(),
                other.bins()
            )));
        }
        Ok(self
            .normalized()
            .iter()
            .zip(other.normalized())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Density on the circle (integrating to one over the reported range),
    /// sampled at bin centers.
    pub fn density(&self) -> SampledDensity {
        let n = self.bins();
        let step = (self.edges[n] - self.edges[0]) / n as f64;
        let total = self.ingested().max(1) as f64;
        SampledDensity {
            start: self.edges[0] + step / 2.0,
            step,
            values: self.counts.iter().map(|&c| c as f64 / (total * step)).collect(),
        }
    }
}

fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    (0..=bins)
        .map(|i| lo + (hi - lo) * i as f64 / bins as f64)
        .collect()
}

fn check_bins(bins: usize) -> Result<()> {
    if bins == 0 {
        Err(Error::InvalidArgument("bin count must be positive".into()))
    } else {
        Ok(())
    }
}

/// Bin of an angle on the chosen arc, or `None` when it falls outside.
/// On the full circle with a bin count divisible by 3, bins within each sector
/// are computed from the sector-relative angle, so the counts are exactly
/// invariant under the `2 pi / 3` rotation of the cloud.
fn angular_bin(b: &BPoint, slices: usize, arc: Arc) -> Option<usize> {
    let (s, u) = sector_angle(b);
    let idx = |x: f64, n: usize| ((x * n as f64) as usize).min(n - 1);
    match arc {
        Arc::Full if slices.is_multiple_of(3) => Some(s * slices / 3 + idx(u, slices / 3)),
        Arc::Full => Some(idx((s as f64 + u) / 3.0, slices)),
        Arc::Third => (s == 0).then(|| idx(u, slices)),
        Arc::Sixth => (s == 0 && u < 0.5).then(|| idx(2.0 * u, slices)),
    }
}

/// Angular distribution of the level-`m` cloud, `slices` bins on `arc`, mean-one normalized.
pub fn angular_histogram(m: usize, slices: usize, arc: Arc) -> Result<Histogram> {
    check_bins(slices)?;
    let counts = fold_level(
        m,
        || vec![0u64; slices],
        |c, b| {
            if let Some(i) = angular_bin(b, slices, arc) {
                c[i] += 1;
            }
        },
        add_counts,
    )?;
    Ok(Histogram {
        edges: uniform_edges(0.0, arc.length(), slices),
        counts,
        normalization: Normalization::MeanOne,
        cloud_size: 3u64.pow(m as u32),
    })
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Radial distribution over `[0, 1/sqrt(6)]`, as ratios of the cloud size.
/// Radii at or beyond the edge fall into the last bin.
pub fn radial_histogram(m: usize, bins: usize) -> Result<Histogram> {
    check_bins(bins)?;
    let rmax = b_disk_radius();
    let counts = fold_level(
        m,
        || vec![0u64; bins],
        |c, b| {
            let i = ((b_radius(b) / rmax * bins as f64) as usize).min(bins - 1);
            c[i] += 1;
        },
        add_counts,
    )?;
    Ok(Histogram {
        edges: uniform_edges(0.0, rmax, bins),
        counts,
        normalization: Normalization::Ratio,
        cloud_size: 3u64.pow(m as u32),
    })
}

/// Fraction of the level-`m` cloud with `r >= 0.9 / sqrt(6)`.
pub fn outer_decile_mass(m: usize) -> Result<f64> {
    let cut = 0.9 * b_disk_radius();
    let n = fold_level(m, || 0u64, |n, b| *n += (b_radius(b) >= cut) as u64, |a, b| a + b)?;
    Ok(n as f64 / 3f64.powi(m as i32))
}

/// Default orbit seeds: `(0,1)`, `(-1,0)`, `(1/sqrt 2, -1/sqrt 2)` in unit-disk coordinates.
pub fn default_orbit_seeds() -> Vec<DiskPoint> {
    vec![
        DiskPoint::new(0.0, 1.0),
        DiskPoint::new(-1.0, 0.0),
        DiskPoint::new(1.0 / SQRT_2, -1.0 / SQRT_2),
    ]
}

fn orbit_walk(theta: f64, depth: usize, f: &mut impl FnMut(f64)) {
    if depth == 0 {
        f(theta);
        return;
    }
    for j in 0..3u8 {
        let next = wrap_angle(g0(theta - shift(j)) + shift(j));
        orbit_walk(next, depth - 1, f);
    }
}

/// Images of the seeds under all words of length `iters` in `g_0, g_1, g_2`.
/// The full circle is cut into `bins` equal bins; the bins lying entirely
/// inside `arc` are reported, mean-one normalized.
pub fn boundary_orbit_histogram(seeds: &[DiskPoint], iters: usize, bins: usize, arc: Arc) -> Result<Histogram> {
    check_bins(bins)?;
    check_level(iters)?;
    let mut angles = Vec::with_capacity(seeds.len());
    for s in seeds {
        let rho = s.unit_radius();
        if (rho - 1.0).abs() > DISK_TOLERANCE {
            return Err(Error::OffCircle { radius: rho });
        }
        angles.push(wrap_angle(s.y.atan2(s.x)));
    }
    let split = iters.min(4);
    let mut starts: Vec<f64> = angles;
    for _ in 0..split {
        starts = starts
            .into_iter()
            .flat_map(|t| (0..3u8).map(move |j| wrap_angle(g0(t - shift(j)) + shift(j))))
            .collect();
    }
    let width = 2.0 * PI / bins as f64;
    let full = starts
        .par_iter()
        .map(|&t| {
            let mut c = vec![0u64; bins];
            orbit_walk(t, iters - split, &mut |a| {
                let i = ((a / width) as usize).min(bins - 1);
                c[i] += 1;
            });
            c
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(vec![0u64; bins], add_counts);
    let keep = match arc {
        Arc::Full => bins,
        _ => ((arc.length() / width) + 1e-9).floor() as usize,
    };
    let keep = keep.clamp(1, bins);
    Ok(Histogram {
        edges: (0..=keep).map(|i| i as f64 * width).collect(),
        counts: full[..keep].to_vec(),
        normalization: Normalization::MeanOne,
        cloud_size: (seeds.len() as u64) * 3u64.pow(iters as u32),
    })
}

/// A function on the circle sampled on the uniform grid `start + i * step`,
/// `step = 2 pi / n`, evaluated between samples by periodic linear interpolation.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledDensity {
    pub start: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl SampledDensity {
    pub fn uniform(n: usize) -> Self {
        SampledDensity {
            start: 0.0,
            step: 2.0 * PI / n as f64,
            values: vec![1.0 / (2.0 * PI); n],
        }
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|i| self.start + i as f64 * self.step)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        let s = wrap_angle(t - self.start) / self.step;
        let i = (s.floor() as usize) % n;
        let frac = s - s.floor();
        self.values[i] * (1.0 - frac) + self.values[(i + 1) % n] * frac
    }
}

/// `sup_t |f(t) - (1/3) sum_j f(g_j^{-1}(t)) / g_j'(g_j^{-1}(t))|` over the grid.
pub fn invariant_density_residual(f: &SampledDensity) -> Result<f64> {
    if f.values.is_empty() {
        return Err(Error::InvalidArgument("empty density".into()));
    }
    if (f.step * f.values.len() as f64 - 2.0 * PI).abs() > 1e-9 {
        return Err(Error::InvalidArgument("density grid must cover the whole circle".into()));
    }
    if f.values.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidArgument("density must be nonnegative".into()));
    }
    let mut worst: f64 = 0.0;
    for t in f.grid() {
        let mut s = 0.0;
        for j in 0..3u8 {
            s += f.eval(circle_map_inverse(j, t)?) * inverse_weight(j, t);
        }
        worst = worst.max((f.eval(t) - s / 3.0).abs());
    }
    Ok(worst)
}
