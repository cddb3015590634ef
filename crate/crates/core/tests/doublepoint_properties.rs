//! Cross checks of the identification enumeration against an independent
//! dense numeric search, plus structural invariants of the pair system.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use okaforge_core::algebra::{
    FactoredRational, GaussianRational, Polynomial, RationalFunction,
};
use okaforge_core::domains::PuncturedPlane;
use okaforge_core::doublepoints::{
    common_component, enumerate_exp, enumerate_rational, pair_system, ComponentVerdict,
    Finiteness,
};
use okaforge_core::maps::ExpCoeff;
use okaforge_core::numeric::Dyadic;
use okaforge_core::util::SplitMix64;

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts(re, im)
}

fn c64(g: &GaussianRational) -> Complex64 {
    Complex64::new(g.re.to_f64().unwrap(), g.im.to_f64().unwrap())
}

fn poly_c64(p: &Polynomial) -> Vec<Complex64> {
    p.coeffs().iter().map(c64).collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Bivariate evaluation data: rows are the y-power coefficients as
/// x-polynomials, plus the x-derivative rows.
struct BivarEval {
    rows: Vec<Vec<Complex64>>,
    drows: Vec<Vec<Complex64>>,
}

impl BivarEval {
    fn new(rows: &[Polynomial]) -> Self {
        BivarEval {
            rows: rows.iter().map(poly_c64).collect(),
            drows: rows.iter().map(|r| poly_c64(&r.derivative())).collect(),
        }
    }

    fn value(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut yp = Complex64::new(1.0, 0.0);
        for row in &self.rows {
            acc += horner(row, x) * yp;
            yp *= y;
        }
        acc
    }

    fn dx(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut yp = Complex64::new(1.0, 0.0);
        for row in &self.drows {
            acc += horner(row, x) * yp;
            yp *= y;
        }
        acc
    }

    fn dy(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut yp = Complex64::new(1.0, 0.0);
        for (j, row) in self.rows.iter().enumerate().skip(1) {
            acc += horner(row, x) * yp * (j as f64);
            yp *= y;
        }
        acc
    }
}

/// Newton search over a coarse grid for the off-diagonal common zeros of
/// the two system polynomials, deduplicated as unordered pairs.
fn grid_oracle(
    fe: &BivarEval,
    ge: &BivarEval,
    punctures: &[Complex64],
    box_half: f64,
) -> Vec<(Complex64, Complex64)> {
    let mut found: Vec<(Complex64, Complex64)> = Vec::new();
    let steps = 9;
    let coords: Vec<f64> = (0..steps)
        .map(|i| -4.4 + 8.8 * (i as f64) / (steps as f64 - 1.0))
        .collect();
    let mut seeds = Vec::new();
    for &xr in &coords {
        for &xi in &coords {
            for &yr in &coords {
                for &yi in &coords {
                    seeds.push((Complex64::new(xr, xi), Complex64::new(yr, yi)));
                }
            }
        }
    }
    'seed: for &(mut x, mut y) in &seeds {
        for _ in 0..60 {
            let fv = fe.value(x, y);
            let gv = ge.value(x, y);
            let a = fe.dx(x, y);
            let b = fe.dy(x, y);
            let c = ge.dx(x, y);
            let d = ge.dy(x, y);
            let det = a * d - b * c;
            if det.norm() < 1e-14 {
                continue 'seed;
            }
            let dx = (fv * d - gv * b) / det;
            let dy = (gv * a - fv * c) / det;
            x -= dx;
            y -= dy;
            if !x.re.is_finite() || !x.im.is_finite() || !y.re.is_finite() || !y.im.is_finite() {
                continue 'seed;
            }
        }
        let resid = fe.value(x, y).norm() + ge.value(x, y).norm();
        if resid > 1e-9 {
            continue;
        }
        if (x - y).norm() < 1e-6 {
            continue;
        }
        if x.re.abs() > box_half || x.im.abs() > box_half || y.re.abs() > box_half
            || y.im.abs() > box_half
        {
            continue;
        }
        if punctures
            .iter()
            .any(|p| (x - p).norm() < 1e-6 || (y - p).norm() < 1e-6)
        {
            continue;
        }
        let (cx, cy) = if (x.re, x.im) <= (y.re, y.im) {
            (x, y)
        } else {
            (y, x)
        };
        if !found
            .iter()
            .any(|&(ux, uy)| (ux - cx).norm() < 1e-6 && (uy - cy).norm() < 1e-6)
        {
            found.push((cx, cy));
        }
    }
    found
}

fn random_instance(
    rng: &mut SplitMix64,
) -> Option<(RationalFunction, FactoredRational, PuncturedPlane)> {
    let pool = [gr(0, 0), gr(1, 0), gr(-1, 0), gr(2, 0), gr(-2, 0)];
    let count = 1 + rng.below(3) as usize;
    let mut punctures: Vec<GaussianRational> = Vec::new();
    while punctures.len() < count {
        let cand = pool[rng.below(pool.len() as u64) as usize].clone();
        if !punctures.contains(&cand) {
            punctures.push(cand);
        }
    }
    let deg = 2 + rng.below(2) as usize;
    let mut coeffs: Vec<GaussianRational> = (0..=deg)
        .map(|_| gr(rng.signed(3), rng.signed(2)))
        .collect();
    if coeffs[deg].is_zero() {
        coeffs[deg] = gr(1, 0);
    }
    let p = Polynomial::new(coeffs);
    let mut q = Polynomial::one();
    for a in punctures.iter().take(1 + rng.below(2) as usize) {
        q = &q * &Polynomial::from_roots(std::slice::from_ref(a));
    }
    let f = RationalFunction::new(p, q).ok()?;
    if f.is_constant() {
        return None;
    }
    let mut factors = Vec::new();
    for a in &punctures {
        let m = rng.signed(2);
        if m != 0 {
            factors.push((a.clone(), m));
        }
    }
    if factors.is_empty() {
        factors.push((punctures[0].clone(), 1 + rng.below(2) as i64));
    }
    let g = FactoredRational::new(GaussianRational::one(), factors).ok()?;
    Some((f, g, PuncturedPlane::new(punctures)))
}

#[test]
fn enumeration_matches_dense_grid_search() {
    let mut rng = SplitMix64::new(0xd0b1e);
    let tol = Dyadic::from_f64(1e-10);
    let box_half = 4.5;
    let mut usable = 0;
    let mut attempts = 0;
    while usable < 8 && attempts < 60 {
        attempts += 1;
        let Some((f, g, x)) = random_instance(&mut rng) else {
            continue;
        };
        let report = match enumerate_rational(&f, &g, &x, &tol) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if !matches!(report.finiteness, Finiteness::Finite) {
            continue;
        }
        usable += 1;
        let sys = pair_system(&f, &g).unwrap();
        let fe = BivarEval::new(sys.f_tilde.y_coefficients());
        let ge = BivarEval::new(sys.g_tilde.y_coefficients());
        let punct_c: Vec<Complex64> = x.punctures().iter().map(c64).collect();
        let oracle = grid_oracle(&fe, &ge, &punct_c, box_half);
        let certified: Vec<(Complex64, Complex64)> = report
            .pairs
            .iter()
            .map(|p| {
                (
                    Complex64::new(p.x.re.to_f64(), p.x.im.to_f64()),
                    Complex64::new(p.y.re.to_f64(), p.y.im.to_f64()),
                )
            })
            .filter(|(a, b)| {
                a.re.abs() <= box_half
                    && a.im.abs() <= box_half
                    && b.re.abs() <= box_half
                    && b.im.abs() <= box_half
            })
            .collect();
        for &(ox, oy) in &oracle {
            let hit = certified.iter().any(|&(cx, cy)| {
                ((cx - ox).norm() < 1e-6 && (cy - oy).norm() < 1e-6)
                    || ((cx - oy).norm() < 1e-6 && (cy - ox).norm() < 1e-6)
            });
            assert!(
                hit,
                "dense search found an identification the enumeration missed: \
                 ({ox}, {oy}) for f = {f}"
            );
        }
        for &(cx, cy) in &certified {
            let hit = oracle.iter().any(|&(ox, oy)| {
                ((cx - ox).norm() < 1e-6 && (cy - oy).norm() < 1e-6)
                    || ((cx - oy).norm() < 1e-6 && (cy - ox).norm() < 1e-6)
            });
            assert!(
                hit,
                "enumeration reported an identification the dense search \
                 cannot confirm: ({cx}, {cy}) for f = {f}"
            );
        }
    }
    assert!(usable >= 8, "only {usable} usable random instances");
}

#[test]
fn pair_system_is_symmetric_in_its_variables() {
    let mut rng = SplitMix64::new(0x5ca1ab1e);
    for _ in 0..40 {
        let Some((f, g, _)) = random_instance(&mut rng) else {
            continue;
        };
        let sys = pair_system(&f, &g).unwrap();
        assert_eq!(sys.f_tilde.swap_vars(), sys.f_tilde);
        assert_eq!(sys.g_tilde.swap_vars(), sys.g_tilde);
    }
}

#[test]
fn even_components_share_a_component() {
    let mut rng = SplitMix64::new(0xeeee);
    for _ in 0..20 {
        let a = 1 + rng.below(3) as i64;
        let c0 = gr(rng.signed(3), 0);
        let mut p = Polynomial::new(vec![
            c0,
            GaussianRational::zero(),
            gr(1 + rng.below(2) as i64, 0),
        ]);
        if rng.below(2) == 1 {
            p = &p * &p;
        }
        let f = RationalFunction::new(p, Polynomial::one()).unwrap();
        let g = FactoredRational::new(
            GaussianRational::one(),
            vec![(gr(a, 0), 1), (gr(-a, 0), 1)],
        )
        .unwrap();
        let sys = pair_system(&f, &g).unwrap();
        assert!(matches!(
            common_component(&sys),
            ComponentVerdict::InfiniteCommonComponent { .. }
        ));
        let x = PuncturedPlane::new(vec![gr(a, 0), gr(-a, 0)]);
        let report = enumerate_rational(&f, &g, &x, &Dyadic::from_f64(1e-10)).unwrap();
        assert!(matches!(
            report.finiteness,
            Finiteness::InfiniteCommonComponent { .. }
        ));
    }
}

#[test]
fn exponential_counts_are_prefix_stable() {
    let mut rng = SplitMix64::new(0xabcd);
    let tol = Dyadic::from_f64(1e-10);
    let mut checked = 0;
    for _ in 0..20 {
        if checked >= 6 {
            break;
        }
        let Some((f, _, x)) = random_instance(&mut rng) else {
            continue;
        };
        let lambda = ExpCoeff::pi_i();
        let (short, long) = match (
            enumerate_exp(&f, &lambda, &x, 2, &tol),
            enumerate_exp(&f, &lambda, &x, 5, &tol),
        ) {
            (Ok(s), Ok(l)) => (s, l),
            _ => continue,
        };
        checked += 1;
        assert_eq!(long.finiteness, Finiteness::CountableTruncated { k_max: 5 });
        for k in 1..=2u32 {
            let short_k: Vec<String> = short
                .pairs
                .iter()
                .filter(|p| p.k == Some(k))
                .map(|p| {
                    format!(
                        "{}|{}",
                        p.x.re.to_decimal_string(18),
                        p.x.im.to_decimal_string(18)
                    )
                })
                .collect();
            let long_k: Vec<String> = long
                .pairs
                .iter()
                .filter(|p| p.k == Some(k))
                .map(|p| {
                    format!(
                        "{}|{}",
                        p.x.re.to_decimal_string(18),
                        p.x.im.to_decimal_string(18)
                    )
                })
                .collect();
            assert_eq!(short_k, long_k);
        }
        for pair in &long.pairs {
            let k = pair.k.unwrap() as f64;
            let dy = pair.y.re.to_f64() - pair.x.re.to_f64();
            let di = pair.y.im.to_f64() - pair.x.im.to_f64();
            assert!((dy - 2.0 * k).abs() < 1e-8);
            assert!(di.abs() < 1e-8);
        }
    }
    assert!(checked >= 6);
}
