//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use squaretile::belyi::{
    barycentric_derivative_exact, barycentric_rational, barycentric_rational_exact,
    barycentric_subdivide, barycentric_subdivide_triangulation, passport, riemann_hurwitz_genus,
    Eisenstein, ExactField, Extended,
};
use squaretile::cartography::Dessin;
use squaretile::csmap::{
    complete_beta, cs_map, incomplete_cs_integral, CsMap, CsMapSpec, QuadratureConfig,
    TriangleToSquare,
};
use squaretile::fixtures;
use squaretile::metric::{chart_transition, face_closure_residual, MetricData, Step, Word};
use squaretile::tiling::{
    corner_bipartition, diagonal_subdivision, refine_2x2, validate_tricoloring, TilingError,
    TricoloredDessin,
};
use squaretile::CellIndex;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cartographic_core() -> Outcome {
    for (name, d, expected) in [
        ("tetrahedron", fixtures::tetrahedron(), (4, 6, 4, 0)),
        (
            "one-square torus",
            fixtures::one_square_torus(),
            (1, 2, 1, 1),
        ),
    ] {
        let (v, e, f) = d.cell_counts();
        let got = (v, e, f, d.genus());
        ensure!(
            got == expected,
            "{name}: got {got:?}, expected {expected:?}"
        );
    }
    Ok(())
}

fn face_word_is_identity(d: &Dessin, m: &MetricData, tol: f64) -> Outcome {
    let faces = d.faces();
    for (id, orbit) in faces.orbits().iter().enumerate() {
        let (pos, heading) =
            face_closure_residual(d, m, CellIndex::face(id)).map_err(|e| e.to_string())?;
        ensure!(
            pos.norm() <= tol && heading.abs() <= tol,
            "face {id} does not close"
        );
        for &e in orbit {
            let (end, chart) = chart_transition(d, m, e, &Word::rho2_power(orbit.len()))
                .map_err(|e| e.to_string())?;
            ensure!(end == e, "face word from dart {e} ends at {end}");
            ensure!(
                chart.identity_defect() <= tol,
                "face word from dart {e}: defect {:e}",
                chart.identity_defect()
            );
        }
    }
    Ok(())
}

fn relations() -> Outcome {
    let mut rng = common::rng(0x5eed_0002);
    for trial in 0..200 {
        let n = 2 * rng.random_range(1..=20);
        let d = fixtures::random_dessin(n, &mut rng);
        let (r0, r1, r2) = (d.rho0(), d.rho1(), d.rho2());
        for e in 0..n {
            ensure!(r1[e] != e, "trial {trial}: rho1 fixes dart {e}");
            ensure!(r1[r1[e]] == e, "trial {trial}: rho1^2 moves dart {e}");
            ensure!(
                r2[r1[r0[e]]] == e,
                "trial {trial}: rho2 rho1 rho0 moves dart {e}"
            );
        }

        // rho1 rho1 and rho0^-1 rho0 under an arbitrary symmetric metric
        let mut lengths = vec![0.0; n];
        for e in 0..n {
            if e < r1[e] {
                let l = rng.random_range(0.5..2.0);
                lengths[e] = l;
                lengths[r1[e]] = l;
            }
        }
        let angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..6.0)).collect();
        let m = MetricData::new(&d, lengths, angles).map_err(|e| e.to_string())?;
        for e in 0..n {
            for word in [
                Word(vec![Step::Rho1, Step::Rho1]),
                Word(vec![Step::Rho0Inv, Step::Rho0]),
                Word(vec![Step::Rho0, Step::Rho0Inv]),
            ] {
                let (end, chart) = chart_transition(&d, &m, e, &word).map_err(|e| e.to_string())?;
                ensure!(
                    end == e && chart.identity_defect() <= 1e-12,
                    "trial {trial}: word {word:?} at {e}"
                );
            }
        }
    }

    // full face-boundary words on metrically closed structures
    let squares = [
        fixtures::one_square_torus(),
        fixtures::torus_grid(3, 2),
        fixtures::cube(),
        fixtures::pillowcase(),
    ];
    for d in &squares {
        face_word_is_identity(d, &MetricData::square(d).map_err(|e| e.to_string())?, 1e-12)?;
    }
    for _ in 0..20 {
        let d = fixtures::random_origami(rng.random_range(1..=12), &mut rng);
        face_word_is_identity(
            &d,
            &MetricData::square(&d).map_err(|e| e.to_string())?,
            1e-12,
        )?;
    }
    for d in [fixtures::tetrahedron(), fixtures::octahedron()] {
        face_word_is_identity(
            &d,
            &MetricData::equilateral(&d).map_err(|e| e.to_string())?,
            1e-12,
        )?;
    }
    Ok(())
}

fn subdivide(d: &Dessin) -> Result<TricoloredDessin, String> {
    let labels = corner_bipartition(d).map_err(|e| e.to_string())?;
    diagonal_subdivision(d, &labels).map_err(|e| e.to_string())
}

fn gap_handling() -> Outcome {
    let torus = fixtures::one_square_torus();
    ensure!(
        matches!(
            corner_bipartition(&torus),
            Err(TilingError::NonBipartite { .. })
        ),
        "corner_bipartition should fail on the one-square torus"
    );
    let refined = refine_2x2(&torus).map_err(|e| e.to_string())?;
    let labels = corner_bipartition(&refined).map_err(|e| e.to_string())?;
    let zeros = labels
        .iter()
        .filter(|l| **l == squaretile::VertexLabel::Zero)
        .count();
    ensure!(
        (zeros, labels.len() - zeros) == (2, 2),
        "refined torus parts {:?}",
        (zeros, labels.len() - zeros)
    );

    let mut rng = common::rng(0x5eed_0003);
    let mut checked = 0;
    while checked < 50 {
        let base = fixtures::random_origami(rng.random_range(1..=10), &mut rng);
        let tiling = if checked % 2 == 0 {
            refine_2x2(&base).map_err(|e| e.to_string())?
        } else if corner_bipartition(&base).is_ok() {
            base
        } else {
            continue;
        };
        let t = subdivide(&tiling)?;
        let violations = validate_tricoloring(&t);
        ensure!(
            violations.is_empty(),
            "tiling {checked}: {} violations",
            violations.len()
        );
        checked += 1;
    }
    Ok(())
}

fn passport_of_grid() -> Outcome {
    let base = fixtures::torus_grid(2, 2);
    let t = subdivide(&base)?;
    let p = passport(&t).map_err(|e| e.to_string())?;
    ensure!(p.degree == 8, "degree {}", p.degree);
    ensure!(
        p.over_zero == [4, 4] && p.over_one == [4, 4] && p.over_infinity == [2, 2, 2, 2],
        "passport {p}"
    );
    let g = riemann_hurwitz_genus(&p).map_err(|e| e.to_string())?;
    ensure!(
        g == 1 && g == base.genus(),
        "genus {g}, base genus {}",
        base.genus()
    );
    Ok(())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational_map() -> Outcome {
    let one = Extended::Finite(q(1, 1));
    for x in [q(1, 2), q(-1, 1), q(2, 1)] {
        let v = barycentric_rational_exact(&Extended::Finite(x.clone()));
        ensure!(v == one, "beta({x}) = {v}");
        let dv = barycentric_derivative_exact(&x);
        ensure!(dv == Extended::Finite(q(0, 1)), "beta'({x}) = {dv}");
    }
    let w = barycentric_rational_exact(&Extended::Finite(Eisenstein::omega()));
    ensure!(
        w == Extended::Finite(Eisenstein::from_ratio(0, 1)),
        "beta(exp(i pi/3)) = {:?}",
        w
    );

    let mut rng = common::rng(0x5eed_0005);
    for i in 0..1000 {
        let x = if i % 2 == 0 {
            c(rng.random_range(-10.0..10.0), 0.0)
        } else {
            c(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0))
        };
        let (Extended::Finite(bx), Extended::Finite(by)) = (
            barycentric_rational(Extended::Finite(x)),
            barycentric_rational(Extended::Finite(c(1.0, 0.0) - x)),
        ) else {
            return Err(format!("pole hit at {x}"));
        };
        let err = (by - bx).norm();
        ensure!(
            err <= 1e-12 * bx.norm().max(1.0),
            "symmetry at {x}: {err:e}"
        );
    }
    Ok(())
}

fn quadrature() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut rng = common::rng(0x5eed_0006);
    for _ in 0..50 {
        let t = c(rng.random_range(-50.0..1.0), rng.random_range(-50.0..50.0));
        let v = incomplete_cs_integral(1.0, 1.0, t, &cfg).map_err(|e| e.to_string())?;
        ensure!(
            (v - t).norm() <= 1e-14 * t.norm().max(1.0),
            "I(1,1;{t}) = {v}"
        );
    }
    for (a, b) in [(0.5, 0.5), (0.25, 0.25), (1.0 / 6.0, 0.5), (0.25, 0.5)] {
        let got = complete_beta(a, b, &cfg).map_err(|e| e.to_string())?;
        let oracle = common::beta(a, b);
        ensure!(
            (got - oracle).abs() <= 1e-8 * oracle,
            "B({a},{b}) = {got}, oracle {oracle}"
        );
    }
    let pi = complete_beta(0.5, 0.5, &cfg).map_err(|e| e.to_string())?;
    ensure!((pi - PI).abs() <= 1e-8 * PI, "B(1/2,1/2) = {pi}");
    let g4 = common::gamma(0.25);
    let b4 = complete_beta(0.25, 0.25, &cfg).map_err(|e| e.to_string())?;
    let oracle = g4 * g4 / common::gamma(0.5);
    ensure!(
        (b4 - oracle).abs() <= 1e-8 * oracle,
        "B(1/4,1/4) = {b4}, oracle {oracle}"
    );

    let doubled = QuadratureConfig {
        node_count: 2 * cfg.node_count,
        ..cfg
    };
    let samples = [
        c(0.3, 0.0),
        c(0.5, -0.5),
        c(-2.0, -0.1),
        c(1.0, 0.0),
        c(3.0, -1e-3),
        c(-1e4, 0.0),
        c(0.9, 1e-4),
    ];
    for spec in CsMapSpec::named() {
        let coarse = CsMap::new(spec, cfg).map_err(|e| e.to_string())?;
        let fine = CsMap::new(spec, doubled).map_err(|e| e.to_string())?;
        for t in samples {
            let (x, y) = (
                coarse.eval(t).map_err(|e| e.to_string())?,
                fine.eval(t).map_err(|e| e.to_string())?,
            );
            ensure!(
                (x - y).norm() <= 1e-9 * y.norm().max(1.0),
                "{}: {t} changes by {:e}",
                spec.name,
                (x - y).norm()
            );
        }
    }
    Ok(())
}

fn corner_values() -> Outcome {
    let cfg = QuadratureConfig::default();
    let spec = CsMapSpec::SQUARE_CELL;
    let d = cs_map(&spec, c(1.0, 0.0), &cfg).map_err(|e| e.to_string())?;
    ensure!((d - c(0.0, 1.0)).norm() <= 1e-9, "z(D) = {d}");
    let o = cs_map(&spec, c(-1e8, 0.0), &cfg).map_err(|e| e.to_string())?;
    ensure!(
        (o - c(0.5, 0.5)).norm() <= 2e-4,
        "z(O) approx = {o}, off by {:e}",
        (o - c(0.5, 0.5)).norm()
    );
    let m = CsMap::new(spec, cfg).map_err(|e| e.to_string())?;
    for k in 1..100 {
        let t = k as f64 / 100.0;
        let z = m.eval(c(t, 0.0)).map_err(|e| e.to_string())?;
        ensure!(z.re.abs() <= 1e-9, "Re z({t}) = {:e}", z.re);
    }
    Ok(())
}

fn corner_angles() -> Outcome {
    let cfg = QuadratureConfig::default();
    let r = 1e-3;
    for spec in CsMapSpec::named() {
        let m = CsMap::new(spec, cfg).map_err(|e| e.to_string())?;
        let start = m.eval(c(r, 0.0)).map_err(|e| e.to_string())?;
        let mut spanned: f64 = 0.0;
        for k in 1..=64 {
            let t = Complex64::from_polar(r, -PI * k as f64 / 64.0);
            let z = m.eval(t).map_err(|e| e.to_string())?;
            spanned = spanned.max((start / z).arg().abs());
        }
        ensure!(
            (spanned - spec.a * PI).abs() <= 1e-3,
            "{}: angle {spanned}, expected {}",
            spec.name,
            spec.a * PI
        );
    }
    Ok(())
}

fn inversion_and_transform() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut rng = common::rng(0x5eed_0009);
    for spec in CsMapSpec::named() {
        let m = CsMap::new(spec, cfg).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let t = common::lower_half_plane_point(&mut rng, 0.05, 5.0, 0.05);
            let z = m.eval(t).map_err(|e| e.to_string())?;
            let back = m.invert(z).map_err(|e| format!("{}: {e}", spec.name))?;
            ensure!(
                (back - t).norm() <= 1e-8,
                "{}: round trip {t} -> {back}",
                spec.name
            );
        }
    }

    let tts = TriangleToSquare::new(cfg).map_err(|e| e.to_string())?;
    let f = |z: Complex64| tts.apply(z).map_err(|e| format!("transform at {z}: {e}"));
    ensure!(f(c(0.0, 0.0))?.norm() <= 1e-12, "0 is not fixed");
    ensure!(
        (f(c(1.0, 0.0))? - c(1.0, 0.0)).norm() <= 1e-12,
        "1 is not fixed"
    );
    let mut prev = 0.0;
    for k in 1..50 {
        let x = k as f64 / 50.0;
        let z = f(c(x, 0.0))?;
        ensure!(z.im.abs() <= 1e-9, "Z({x}) = {z} is not real");
        ensure!(z.re > prev && z.re < 1.0, "not increasing at {x}: {z}");
        prev = z.re;
    }
    let h = 1e-5;
    for z in [
        c(0.5, -0.2),
        c(0.3, -0.05),
        c(0.8, -0.4),
        c(0.9, -0.1),
        c(0.6, -0.3),
    ] {
        let fx = (f(z + h)? - f(z - h)?) / (2.0 * h);
        let fy = (f(z + c(0.0, h))? - f(z - c(0.0, h))?) / (2.0 * h);
        let residual = (fy - c(0.0, 1.0) * fx).norm() / fx.norm();
        ensure!(
            residual <= 1e-6,
            "Cauchy-Riemann residual {residual:e} at {z}"
        );
    }
    Ok(())
}

fn subdivision_arithmetic() -> Outcome {
    let mut tricolored: Vec<(&str, TricoloredDessin)> = vec![
        ("grid 2x2", subdivide(&fixtures::torus_grid(2, 2))?),
        (
            "grid 3x2 refined",
            subdivide(&refine_2x2(&fixtures::torus_grid(3, 2)).map_err(|e| e.to_string())?)?,
        ),
        (
            "one-square torus refined",
            subdivide(&refine_2x2(&fixtures::one_square_torus()).map_err(|e| e.to_string())?)?,
        ),
        ("cube", subdivide(&fixtures::cube())?),
        ("pillowcase", subdivide(&fixtures::pillowcase())?),
        ("octahedron", fixtures::octahedron_tricolored()),
    ];
    for (name, d) in [
        ("tetrahedron", fixtures::tetrahedron()),
        ("octahedron", fixtures::octahedron()),
    ] {
        tricolored.push((
            name,
            barycentric_subdivide_triangulation(&d).map_err(|e| e.to_string())?,
        ));
    }
    for (name, t) in &tricolored {
        let s = barycentric_subdivide(t).map_err(|e| format!("{name}: {e}"))?;
        let (f0, f1) = (t.base.faces().count(), s.base.faces().count());
        ensure!(f1 == 6 * f0, "{name}: {f0} faces became {f1}");
        ensure!(s.base.genus() == t.base.genus(), "{name}: genus changed");
        let (p0, p1) = (
            passport(t).map_err(|e| e.to_string())?,
            passport(&s).map_err(|e| e.to_string())?,
        );
        ensure!(
            p1.degree == 6 * p0.degree,
            "{name}: degree {} became {}",
            p0.degree,
            p1.degree
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cartographic core", cartographic_core),
        ("relations", relations),
        ("gap handling", gap_handling),
        ("passport", passport_of_grid),
        ("rational map", rational_map),
        ("quadrature", quadrature),
        ("corner values", corner_values),
        ("corner-angle law", corner_angles),
        ("inversion and transform", inversion_and_transform),
        ("subdivision arithmetic", subdivision_arithmetic),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
