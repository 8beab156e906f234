//! Invariant suites shared by the `verify` command and the test-suite.
//!
//! Each check reports pass/fail with a short detail; on failure the detail
//! names a counterexample. Sampling is seeded, so runs are reproducible.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bvectors::{self, BVector};
use crate::derivatives::{self, QVariant};
use crate::dynamics::{self, DiskPoint};
use crate::error::{Error, Result};
use crate::generators::{generator, limit_matrix, word_matrix, Family};
use crate::harmonic::{self, Harmonic, SymmetryClass};
use crate::measures::{self, MeasureCoeffs};
use crate::rational::{int, rat, Rational};
use crate::word::{cell_vertices, VertexAddress, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Harmonic,
    Measures,
    Derivatives,
    Bvectors,
    Dynamics,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "core",
        "harmonic",
        "measures",
        "derivatives",
        "bvectors",
        "dynamics",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "core" => Suite::Core,
            "harmonic" => Suite::Harmonic,
            "measures" => Suite::Measures,
            "derivatives" => Suite::Derivatives,
            "bvectors" => Suite::Bvectors,
            "dynamics" => Suite::Dynamics,
            "all" => Suite::All,
            other => return Err(Error::parse("suite", other, "unknown suite")),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}::{} - {}", self.suite, self.name, self.detail)
    }
}

type Outcome = std::result::Result<String, String>;

fn record(out: &mut Vec<Check>, suite: &'static str, name: &'static str, o: Outcome) {
    let (passed, detail) = match o {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(Check {
        suite,
        name,
        passed,
        detail,
    });
}

/// Largest depth accepted by the exact suites.
pub const MAX_VERIFY_DEPTH: usize = 8;

pub fn run(suite: Suite, max_depth: usize) -> Result<Vec<Check>> {
    if max_depth > MAX_VERIFY_DEPTH {
        return Err(Error::DepthLimit {
            requested: max_depth,
            max: MAX_VERIFY_DEPTH,
        });
    }
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Core {
        core_suite(&mut out, max_depth)?;
    }
    if all || suite == Suite::Harmonic {
        harmonic_suite(&mut out, max_depth)?;
    }
    if all || suite == Suite::Measures {
        measures_suite(&mut out, max_depth)?;
    }
    if all || suite == Suite::Derivatives {
        derivatives_suite(&mut out, max_depth)?;
    }
    if all || suite == Suite::Bvectors {
        bvectors_suite(&mut out, max_depth)?;
    }
    if all || suite == Suite::Dynamics {
        dynamics_suite(&mut out, max_depth)?;
    }
    Ok(out)
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5157_0000 + tag)
}

pub fn random_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-20..=20), r.gen_range(1..=12))
}

pub fn random_harmonic(r: &mut impl Rng) -> Harmonic {
    Harmonic::new(random_rational(r), random_rational(r), random_rational(r))
}

/// Random integer triple with `ab + bc + ca > 0` and positive sum.
pub fn random_interior_coeffs(r: &mut impl Rng) -> MeasureCoeffs {
    loop {
        let c = MeasureCoeffs::from_ints([
            r.gen_range(-10..=10),
            r.gen_range(-10..=10),
            r.gen_range(-10..=10),
        ]);
        if c.cone_value().is_positive() && c.0.sum().is_positive() {
            return c;
        }
    }
}

/// Random integer triple with `ab + bc + ca < 0`.
pub fn random_exterior_coeffs(r: &mut impl Rng) -> MeasureCoeffs {
    loop {
        let c = MeasureCoeffs::from_ints([
            r.gen_range(-10..=10),
            r.gen_range(-10..=10),
            r.gen_range(-10..=10),
        ]);
        if c.cone_value().is_negative() {
            return c;
        }
    }
}

fn words_up_to(d: usize) -> Result<Vec<Word>> {
    Word::all_up_to_length(d)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>) -> Result<Option<T>> {
    for it in items {
        if !ok(&it)? {
            return Ok(Some(it));
        }
    }
    Ok(None)
}

fn outcome<T: fmt::Display>(fail: Option<T>, pass: String) -> Outcome {
    match fail {
        None => Ok(pass),
        Some(t) => Err(format!("counterexample {t}")),
    }
}

fn core_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "core";
    let words = words_up_to(d.min(3))?;
    let pairs: Vec<(Word, Word)> = words
        .iter()
        .flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone())))
        .collect();
    let fail = first_failure(pairs.iter(), |(u, v)| {
        let uv = u.concat(v)?;
        Ok(word_matrix(Family::M, &uv) == &word_matrix(Family::M, u) * &word_matrix(Family::M, v))
    })?;
    record(out, S, "m_word_product", outcome(fail.map(|(u, v)| format!("{u}|{v}")), format!("{} pairs", pairs.len())));

    let fail = first_failure(pairs.iter(), |(u, v)| {
        let uv = u.concat(v)?;
        Ok(word_matrix(Family::E, &uv) == &word_matrix(Family::E, v) * &word_matrix(Family::E, u))
    })?;
    record(out, S, "e_word_product_reversed", outcome(fail.map(|(u, v)| format!("{u}|{v}")), format!("{} pairs", pairs.len())));

    let words = words_up_to(d)?;
    let fail = first_failure(words.iter(), |w| {
        let e = word_matrix(Family::E, w);
        for i in 0..3 {
            let c = MeasureCoeffs::basis(i);
            let via_e = e.apply(&measures::level1_from_coeffs(&c).0);
            for j in 0..3 {
                if via_e[j as usize] != measures::measure_of_cell(&c, &w.child(j)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })?;
    record(out, S, "cross_family", outcome(fail, format!("{} words x 3 measures", words.len())));

    let ok = (0..3).all(|j| {
        let a = limit_matrix(j);
        (generator(Family::E, j) * &a).scale(&rat(5, 3)) == a
    });
    record(out, S, "eigen_relation", if ok { Ok("j = 0,1,2".into()) } else { Err("(5/3) E_j A_j != A_j".into()) });

    // every non-boundary vertex of V_d has exactly two representations
    let mut reps = std::collections::BTreeMap::<VertexAddress, usize>::new();
    for w in Word::all_of_length(d)? {
        for j in 0..3 {
            let v = VertexAddress::new(w.clone(), j)?;
            let c = v.canonicalize();
            if c.canonicalize() != c {
                record(out, S, "canonical_quotient", Err(format!("not idempotent at {v}")));
                return Ok(());
            }
            *reps.entry(c).or_default() += 1;
        }
    }
    let bad = reps
        .iter()
        .find(|(v, &n)| if v.is_boundary() { n != 1 } else { n != 2 })
        .map(|(v, n)| format!("{v} has {n} representations"));
    record(out, S, "canonical_quotient", outcome(bad, format!("{} vertices at level {d}", reps.len())));
    Ok(())
}

fn sample_harmonics(n: usize, tag: u64) -> Vec<Harmonic> {
    let mut r = rng(tag);
    let mut hs = vec![Harmonic::basis(0), Harmonic::basis(1), Harmonic::basis(2), Harmonic::from_ints([1, 2, 0])];
    hs.extend((0..n).map(|_| random_harmonic(&mut r)));
    hs
}

fn harmonic_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "harmonic";
    let hs = sample_harmonics(20, 1);
    let fail = first_failure(hs.iter(), |h| {
        let e0 = h.energy();
        for m in 0..=d.min(5) {
            if harmonic::graph_energy(&harmonic::harmonic_vertex_values(h, m)?, m)? != e0 {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "graph_energy_level_independent", outcome(fail, format!("{} harmonics, m <= {}", hs.len(), d.min(5))));

    let words = words_up_to(d)?;
    let few = &hs[..8];
    let fail = first_failure(words.iter(), |w| {
        for h in few {
            let mut s = Rational::zero();
            for j in 0..3 {
                s += harmonic::cell_energy(h, &w.child(j)?);
            }
            if s != harmonic::cell_energy(h, w) {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "cell_additivity", outcome(fail, format!("{} words", words.len())));

    let fail = first_failure(words.iter(), |w| {
        let k = crate::rational::pow(&rat(3, 5), w.len());
        for h in few {
            let osc0 = harmonic::oscillation(h, &Word::empty());
            if harmonic::oscillation(h, w) > &osc0 * &k {
                return Ok(false);
            }
            if harmonic::cell_energy(h, w) > int(2) * &osc0 * &osc0 * &k {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "oscillation_and_energy_bounds", outcome(fail, format!("{} words", words.len())));

    let fail = first_failure(hs.iter(), |h| {
        let on_boundary = harmonic::measure_coeffs(h, h).cone_value().is_zero();
        let comp = h.is_constant() || harmonic::complement_coeffs(h)?.cone_value().is_zero();
        Ok(on_boundary && comp)
    })?;
    record(out, S, "cone_boundary", outcome(fail, format!("{} harmonics and complements", hs.len())));

    let fail = first_failure(words.iter(), |w| {
        for h in few {
            let skew = harmonic::classify_symmetry(h, w) == SymmetryClass::SkewSymmetricAbout(0);
            let constant = harmonic::classify_symmetry(h, w) == SymmetryClass::Constant;
            let zero = derivatives::skew_gap(h, w).is_zero();
            if zero != (skew || constant) {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "skew_iff_gap_zero", outcome(fail, format!("{} words", words.len())));
    Ok(())
}

fn measures_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "measures";
    let words = words_up_to(d)?;
    let fail = first_failure(words.iter(), |w| {
        Ok((0..3).all(|i| {
            let c = MeasureCoeffs::basis(i);
            measures::children_triple(&c, w) == measures::children_triple_via_e(&c, w)
        }))
    })?;
    record(out, S, "e_route_equals_m_route", outcome(fail, format!("{} words", words.len())));

    let hs = sample_harmonics(20, 2);
    let small = words_up_to(d.min(4))?;
    let fail = first_failure(hs.iter(), |h| {
        let c = harmonic::measure_coeffs(h, h);
        Ok(small.iter().all(|w| measures::measure_of_cell(&c, w) == harmonic::cell_energy(h, w)))
    })?;
    record(out, S, "harmonic_oracle", outcome(fail, format!("{} harmonics x {} words", hs.len(), small.len())));

    let c = MeasureCoeffs::from_ints([3, -1, 2]);
    let fail = first_failure(words.iter(), |w| {
        let mut s = Rational::zero();
        for j in 0..3 {
            s += measures::measure_of_cell(&c, &w.child(j)?);
        }
        Ok(s == measures::measure_of_cell(&c, w))
    })?;
    record(out, S, "additivity", outcome(fail, format!("{} words", words.len())));

    let fail = first_failure(words.iter(), |w| {
        for i in 0..3 {
            if !measures::selfsim_identity_gap(w, i)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "selfsim_identity", outcome(fail, format!("{} words", words.len())));

    let fail = first_failure(words.iter(), |w| Ok(measures::strictness_margin(w).is_positive()))?;
    record(out, S, "kusuoka_strictness", outcome(fail, format!("{} words", words.len())));

    let mut r = rng(3);
    let interior: Vec<MeasureCoeffs> = (0..20).map(|_| random_interior_coeffs(&mut r)).collect();
    let fail = first_failure(interior.iter(), |c| Ok(!measures::min_cell_value(c, d).1.is_negative()))?;
    record(out, S, "positive_cone_nonnegative", outcome(fail, format!("20 triples, cells |w| <= {d}")));

    let exterior: Vec<MeasureCoeffs> = (0..20).map(|_| random_exterior_coeffs(&mut r)).collect();
    let fail = first_failure(exterior.iter(), |c| Ok(measures::negative_cell_witness(c, 10).is_some()))?;
    record(out, S, "exterior_witness", outcome(fail, "20 triples, witnesses at |w| <= 10".into()));
    Ok(())
}

fn derivatives_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "derivatives";
    let verts = cell_vertices(&Word::empty(), d)?;
    let basis: Vec<MeasureCoeffs> = (0..3).map(MeasureCoeffs::basis).collect();

    let fail = first_failure(verts.iter(), |v| {
        Ok(basis
            .iter()
            .all(|c| derivatives::rn_derivative(c, v) == derivatives::rn_derivative_via_m(c, v)))
    })?;
    record(out, S, "route_equality", outcome(fail, format!("{} vertices", verts.len())));

    let fail = first_failure(verts.iter(), |v| {
        Ok(basis.iter().all(|c| match derivatives::junction_values(c, v) {
            None => true,
            Some((a, b)) => a == b,
        }))
    })?;
    record(out, S, "junction_two_sided", outcome(fail, format!("{} vertices", verts.len())));

    let fail = first_failure(verts.iter(), |v| {
        let vals: Vec<Rational> = basis.iter().map(|c| derivatives::rn_derivative(c, v)).collect();
        let sum: Rational = vals.iter().sum();
        Ok(sum == int(1) && vals.iter().all(derivatives::in_unit_interval))
    })?;
    record(out, S, "normalization_and_range", outcome(fail, format!("{} vertices", verts.len())));

    let mut r = rng(4);
    let cs: Vec<MeasureCoeffs> = (0..10).map(|_| random_interior_coeffs(&mut r)).collect();
    let fail = first_failure(cs.iter(), |c| {
        let scan = derivatives::scan_extrema(c, &Word::empty(), d)?;
        let bound = rat(2, 3) * c.0.sum();
        Ok(match scan.interior {
            Some(e) => e.max < bound,
            None => true,
        })
    })?;
    record(out, S, "sup_bound_strict_interior", outcome(fail, format!("10 positive triples, depth {d}")));

    let mut mins = Vec::new();
    for depth in 0..=d {
        mins.push(derivatives::scan_extrema(&MeasureCoeffs::basis(0), &Word::empty(), depth)?.all.min);
    }
    let ok = mins.windows(2).all(|p| p[1] <= p[0]);
    record(
        out,
        S,
        "scan_min_nonincreasing",
        if ok {
            Ok(format!("min at depth {d} = {}", mins[d]))
        } else {
            Err(format!("mins {mins:?}"))
        },
    );

    let hs = sample_harmonics(30, 5);
    let words = words_up_to(d.min(4))?;
    let fail = first_failure(hs.iter(), |h| {
        for w in &words {
            let g = derivatives::skew_gap(h, w);
            if g.is_negative() {
                return Ok(false);
            }
            let skew = matches!(
                harmonic::classify_symmetry(h, w),
                SymmetryClass::SkewSymmetricAbout(0) | SymmetryClass::Constant
            );
            if g.is_zero() != skew {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "skew_gap_sign_and_equality", outcome(fail, format!("{} harmonics x {} words", hs.len(), words.len())));

    let ok = (0..3).all(|j| {
        let s = derivatives::eigen_convergence(j, 30);
        s.windows(2).all(|p| p[1] <= p[0]) && s[30] < 1e-5
    });
    record(out, S, "eigen_convergence", if ok { Ok("n <= 30".into()) } else { Err("not monotone".into()) });

    let fail = first_failure(0..=10usize, |&m| {
        Ok(derivatives::c_w(&Word::repeat(1, m)?)? == derivatives::c_ones_closed(m))
    })?;
    record(out, S, "c_ones_closed_form", outcome(fail, "m <= 10".into()));

    let mut worst = Rational::zero();
    for m in 0..=d.min(derivatives::MAX_NORM_LEVEL) {
        let (n, _) = derivatives::operator_norm_scan(m)?;
        if n > worst {
            worst = n;
        }
    }
    let ok = worst <= derivatives::operator_norm_bound();
    record(
        out,
        S,
        "operator_norm_bounded",
        if ok {
            Ok(format!("max {:.6}", crate::rational::to_f64(&worst)))
        } else {
            Err(format!("max {worst} exceeds {}", derivatives::operator_norm_bound()))
        },
    );

    let fail = first_failure(verts.iter().take(200), |v| {
        let s: Rational = (0..3).map(|i| derivatives::q_factor(i, v, QVariant::Derived)).sum();
        Ok(s == rat(3, 5))
    })?;
    record(out, S, "q_factor_sum", outcome(fail, "sum of Q_i is 3/5".into()));
    Ok(())
}

fn bvectors_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "bvectors";
    let words = words_up_to(d)?;
    let fail = first_failure(words.iter(), |w| {
        let m = bvectors::b_from_m(w);
        Ok(m == bvectors::b_from_kusuoka(w) && m == bvectors::b_iterated(w))
    })?;
    record(out, S, "three_routes", outcome(fail, format!("{} words", words.len())));

    let in_bounds = |b: &BVector| {
        b.0.sum() == int(1)
            && b.0.iter().all(|x| x.is_positive() && *x < rat(2, 3))
            && b.deviation() < rat(1, 6)
    };
    let fail = first_failure(words.iter().filter(|w| !w.is_empty()), |w| Ok(in_bounds(&bvectors::b_from_m(w))))?;
    record(out, S, "strict_bounds", outcome(fail, format!("{} nonempty words", words.len() - 1)));

    let devs: Vec<Rational> = (0..=d.max(2)).map(|m| bvectors::closed_form_b(m).deviation()).collect();
    let ok = devs.windows(2).all(|p| p[0] < p[1]) && devs.iter().all(|x| *x < rat(1, 6));
    record(out, S, "sharpness_trend", if ok { Ok("increasing toward 1/6".into()) } else { Err("not increasing".into()) });

    let fail = first_failure(words.iter(), |w| Ok(bvectors::column_sum_cone(w).is_positive()))?;
    record(out, S, "column_sum_cone", outcome(fail, format!("{} words", words.len())));

    let basis: Vec<MeasureCoeffs> = (0..3).map(MeasureCoeffs::basis).collect();
    let fail = first_failure(words.iter(), |w| {
        for c in &basis {
            if !bvectors::weighted_average_gap(c, w)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    record(out, S, "weighted_average_identity", outcome(fail, format!("{} words", words.len())));
    Ok(())
}

fn dynamics_suite(out: &mut Vec<Check>, d: usize) -> Result<()> {
    const S: &str = "dynamics";
    let mut r = rng(6);
    let rb = dynamics::b_disk_radius();

    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let t: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        for j in 0..3u8 {
            let img = dynamics::apply_b(j, DiskPoint::from_polar(rb, t))?;
            let a = dynamics::wrap_angle(img.y.atan2(img.x));
            let g = dynamics::circle_map_closed(j, t)?;
            let diff = (a - g).abs();
            worst = worst.max(diff.min(std::f64::consts::TAU - diff));
        }
    }
    record(out, S, "circle_agreement", if worst <= 1e-12 { Ok(format!("max {worst:.2e}")) } else { Err(format!("max {worst:.2e}")) });

    let mut bad = None;
    for _ in 0..2000 {
        let p = DiskPoint::from_polar(rb * r.gen_range(0.0f64..1.0).sqrt(), r.gen_range(0.0..std::f64::consts::TAU));
        let mut q = p;
        for _ in 0..5 {
            q = dynamics::apply_b(r.gen_range(0..3), q)?;
        }
        if q.to_polar().0 > rb + 1e-12 {
            bad = Some(format!("({}, {})", p.x, p.y));
            break;
        }
    }
    record(out, S, "disk_invariance", outcome(bad, "2000 points, 5-fold compositions".into()));

    let mut worst: f64 = 0.0;
    for j in 0..3u8 {
        for t in dynamics::boundary_fixed_points(j)? {
            let p = DiskPoint::from_polar(rb, t);
            let q = dynamics::apply_b(j, p)?;
            worst = worst.max((q.x - p.x).hypot(q.y - p.y));
        }
    }
    let interior: usize = (0..3u8)
        .map(|j| dynamics::interior_fixed_point_search(j, 60, 1e-3, 1e-12).map(|v| v.len()))
        .sum::<Result<usize>>()?;
    let ok = worst <= 1e-12 && interior == 0;
    record(
        out,
        S,
        "fixed_points",
        if ok {
            Ok(format!("boundary residual {worst:.2e}, no interior fixed point"))
        } else {
            Err(format!("boundary residual {worst:.2e}, {interior} interior hits"))
        },
    );

    let mut worst: f64 = 0.0;
    let h = 1e-6;
    for k in 0..500 {
        let t = k as f64 * 0.0125;
        for j in 0..3u8 {
            let d0 = dynamics::circle_map_derivative(j, t)?;
            let a = dynamics::circle_map_closed(j, t + h)?;
            let b = dynamics::circle_map_closed(j, t - h)?;
            let mut diff = a - b;
            if diff.abs() > std::f64::consts::PI {
                diff -= diff.signum() * std::f64::consts::TAU;
            }
            worst = worst.max((diff / (2.0 * h) - d0).abs());
            if d0 <= 0.0 {
                worst = f64::INFINITY;
            }
        }
    }
    record(out, S, "derivative_formula", if worst <= 1e-8 { Ok(format!("max {worst:.2e}")) } else { Err(format!("max {worst:.2e}")) });

    let level = d.min(8);
    let hist = dynamics::angular_histogram(level, 30, dynamics::Arc::Full)?;
    let ok = hist.counts[..10] == hist.counts[10..20] && hist.counts[..10] == hist.counts[20..];
    record(out, S, "angular_rotation_symmetry", if ok { Ok(format!("level {level}, 30 bins")) } else { Err(format!("{:?}", hist.counts)) });

    let mut bad = None;
    for _ in 0..50 {
        let len = r.gen_range(0..=d.min(8));
        let letters: Vec<u8> = (0..len).map(|_| r.gen_range(0..3)).collect();
        let w = Word::new(letters.clone())?;
        let exact = bvectors::b_from_m(&w).to_f64();
        let float = dynamics::b_point_of(&letters);
        if (0..3).any(|i| (exact[i] - float[i]).abs() > 1e-10) {
            bad = Some(w);
            break;
        }
    }
    record(out, S, "cloud_matches_exact", outcome(bad, "50 random words".into()));

    let mut bad = None;
    for _ in 0..2000 {
        let p = DiskPoint::from_polar(rb * r.gen_range(0.0f64..1.0).sqrt(), r.gen_range(0.0..std::f64::consts::TAU));
        let q = DiskPoint::from_polar(rb * r.gen_range(0.0f64..1.0).sqrt(), r.gen_range(0.0..std::f64::consts::TAU));
        if (p.x - q.x).hypot(p.y - q.y) <= 1e-6 {
            continue;
        }
        for j in 0..3u8 {
            if dynamics::apply_b(j, p)? == dynamics::apply_b(j, q)? {
                bad = Some(format!("({}, {}) j={j}", p.x, p.y));
            }
        }
    }
    record(out, S, "injectivity", outcome(bad, "2000 pairs".into()));

    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let rr = rb * r.gen_range(0.0f64..1.0).sqrt();
        let t = r.gen_range(0.0..std::f64::consts::TAU);
        for j in 0..3u8 {
            worst = worst.max(dynamics::gamma_residual(rr, t, j)?);
        }
    }
    record(out, S, "radius_relation", if worst < 1e-12 { Ok(format!("max {worst:.2e}")) } else { Err(format!("max {worst:.2e}")) });

    Ok(())
}
