//! Acceptance runner: one PASS/FAIL line per criterion. Seeds, sample sizes
//! and bounds are fixed below so every run checks the same instances.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use hilbert_core::cone::Cone;
use hilbert_core::dual::{dual_hilbert_basis, OrderStrategy};
use hilbert_core::fm::{dual_cone, naive_facets, raw_fm_step, FmOptions, Hull};
use hilbert_core::linalg::{determinant_abs, IntMatrix, LatticeMode};
use hilbert_core::primal::{enumerate_par_points, primal_hilbert_basis, triangulated_cone, SimplicialCell};
use hilbert_core::shelling::{eval_polynomial, hilbert_series, is_shelling, LiftOptions};
use hilbert_core::{parse_input, run, Algorithm};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAGIC_TIME_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_CONES: usize = 100;
const PAR_CELLS: usize = 50;
const PAR_BOX: i64 = 5;
const EHRHART_MAX_K: i64 = 5;
const INVARIANCE_TRIALS: usize = 4;
const SHELLING_INSTANCES: usize = 30;
const FM_CONES: usize = 50;
const VOLUME_POLYTOPES: usize = 10;
const VOLUME_ORDERS: usize = 20;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn magic_squares() -> Outcome {
    let text = include_str!("data/magic4.in");
    let mut lines = Vec::new();
    for algorithm in [Algorithm::Primal, Algorithm::Dual] {
        let mut problem = parse_input(text).map_err(|e| e.to_string())?;
        problem.options.algorithm = algorithm;
        let start = Instant::now();
        let r = run(&problem).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        // The benchmark counts the inequality system handed to the
        // algorithms: 16 sign conditions and both halves of 9 equations.
        let got = (r.dim, r.extreme_rays.len(), r.num_inequalities, r.hilbert_basis.len());
        check(got == (8, 20, 34, 20), || {
            format!("{algorithm:?}: (dim, ext, supp, hb) = {got:?}, expected (8, 20, 34, 20)")
        })?;
        check(elapsed < MAGIC_TIME_LIMIT, || format!("{algorithm:?} took {elapsed:?}"))?;
        lines.push(format!(
            "{algorithm:?} {:.3}s ({} irredundant facets)",
            elapsed.as_secs_f64(),
            r.support_hyperplanes.len()
        ));
    }
    Ok(lines.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0002);
    let mut total_hb = 0;
    let mut times = [Duration::ZERO; 3];
    for case in 0..ORACLE_CONES {
        let d = rng.gen_range(1..=4);
        let n = rng.gen_range(d..=8);
        let gens = random_full_cone(&mut rng, d, n, 0, 7);
        let t = Instant::now();
        let expected = brute_hilbert_basis(&gens);
        times[0] += t.elapsed();
        let t = Instant::now();
        let primal = primal_hilbert_basis(&big(&gens), LatticeMode::AmbientLattice)
            .map_err(|e| format!("case {case}: primal failed: {e}"))?;
        times[1] += t.elapsed();
        let forms = big(&brute_facets(&gens));
        let t = Instant::now();
        let dual = dual_hilbert_basis(&forms, &[], d, OrderStrategy::Heuristic)
            .map_err(|e| format!("case {case}: dual failed: {e}"))?;
        times[2] += t.elapsed();
        let p = small(&primal.hilbert_basis);
        let q = small(&dual.hilbert_basis);
        check(p == expected && q == expected, || {
            format!(
                "case {case} {gens:?}: primal {} / dual {} / oracle {} elements; primal-only {:?}, dual-only {:?}",
                p.len(),
                q.len(),
                expected.len(),
                p.iter().filter(|v| !expected.contains(v)).take(5).collect::<Vec<_>>(),
                q.iter().filter(|v| !expected.contains(v)).take(5).collect::<Vec<_>>()
            )
        })?;
        total_hb += expected.len();
    }
    Ok(format!(
        "{ORACLE_CONES}/{ORACLE_CONES} cones agree ({total_hb} basis elements; oracle {:.1}s, primal {:.1}s, dual {:.1}s)",
        times[0].as_secs_f64(),
        times[1].as_secs_f64(),
        times[2].as_secs_f64()
    ))
}

/// Cofactor adjugate: `g * adj = det * I`.
fn adjugate(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = g.len();
    let mut adj = vec![vec![0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<i64>> = g
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // coefficient row vector: c = z * adj / det where z = c * g
            adj[j][i] = sign * det(&minor);
        }
    }
    adj
}

fn row_times(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m[0].len()).map(|j| v.iter().zip(m).map(|(a, row)| a * row[j]).sum()).collect()
}

fn parallelotope_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0003);
    let mut points_checked = 0usize;
    for case in 0..PAR_CELLS {
        let d = rng.gen_range(1..=4);
        let g = loop {
            let g: Vec<Vec<i64>> = (0..d).map(|_| random_vector(&mut rng, d, -5, 5)).collect();
            if det(&g) != 0 {
                break g;
            }
        };
        let gens = big(&g);
        let cell = SimplicialCell::new((0..d).collect(), &gens);
        let pts = enumerate_par_points(&cell, &gens);
        let lib_det = determinant_abs(&IntMatrix::from_rows(gens.clone())).map_err(|e| e.to_string())?;
        let det_g = det(&g);
        let det_abs = det_g.abs();
        check(BigInt::from(pts.len()) == lib_det && lib_det == BigInt::from(det_abs), || {
            format!("case {case}: {} points, |det| {lib_det} vs oracle {det_abs}", pts.len())
        })?;
        let adj = adjugate(&g);
        let set: BTreeSet<Vec<i64>> = pts.iter().map(|p| to_i64(&p.vector)).collect();
        check(set.len() == pts.len(), || format!("case {case}: repeated points"))?;
        for p in &pts {
            let v = to_i64(&p.vector);
            let c = row_times(&v, &adj);
            // coefficients c/det must lie in [0, 1)
            let ok = c.iter().all(|&x| {
                let y = x * det_g.signum();
                (0..det_abs).contains(&y)
            });
            let support: Vec<usize> = (0..d).filter(|&i| c[i] != 0).collect();
            check(ok && support == p.barycentric_support, || {
                format!("case {case}: {v:?} has coefficients {c:?}/{det_g}")
            })?;
        }
        // every lattice point of the box is a unique point of the
        // parallelotope plus an integral combination of the generators
        let mut z = vec![-PAR_BOX; d];
        loop {
            let c = row_times(&z, &adj);
            let n: Vec<i64> = c.iter().map(|&x| (x * det_g.signum()).div_euclid(det_abs)).collect();
            let shift = row_times(&n, &g);
            let p: Vec<i64> = z.iter().zip(&shift).map(|(a, b)| a - b).collect();
            check(set.contains(&p), || format!("case {case}: {z:?} reduces to {p:?}, not listed"))?;
            let in_cone = c.iter().all(|&x| x * det_g.signum() >= 0);
            check(!in_cone || n.iter().all(|&x| x >= 0), || {
                format!("case {case}: {z:?} in the cone with negative multiplicities {n:?}")
            })?;
            points_checked += 1;
            let mut j = 0;
            while j < d && z[j] == PAR_BOX {
                z[j] = -PAR_BOX;
                j += 1;
            }
            if j == d {
                break;
            }
            z[j] += 1;
        }
    }
    Ok(format!("{PAR_CELLS} cells, {points_checked} box points represented uniquely"))
}

fn random_lift_options<R: Rng>(rng: &mut R, m: usize) -> LiftOptions {
    LiftOptions {
        initial_weights: Some((0..m).map(|_| BigInt::from(rng.gen_range(1..=20))).collect()),
        interior_coefficients: Some((0..=m).map(|_| BigInt::from(rng.gen_range(1..=20))).collect()),
        ..LiftOptions::default()
    }
}

fn h_vector_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0004);
    let square = vec![vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]];
    let cube: Vec<Vec<i64>> = (0..8).map(|b| vec![b & 1, (b >> 1) & 1, (b >> 2) & 1, 1]).collect();
    let mut instances = vec![
        ("square", square, Some(vec![1, 1, 0])),
        ("cube", cube, Some(vec![1, 4, 1, 0])),
    ];
    for i in 0..3 {
        let d = rng.gen_range(3..=4);
        let n = rng.gen_range(d + 2..=8);
        instances.push((["polytope 1", "polytope 2", "polytope 3"][i], random_polytope(&mut rng, d, n, 3), None));
    }
    let mut summary = Vec::new();
    for (name, gens, expected_h) in instances {
        let cone = Cone::from_generators(&big(&gens), LatticeMode::AmbientLattice).map_err(|e| e.to_string())?;
        let base = hilbert_series(&cone, &LiftOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let h = small(&[base.h_vector.coefficients.clone()]).remove(0);
        if let Some(e) = &expected_h {
            check(&h == e, || format!("{name}: h-vector {h:?}, expected {e:?}"))?;
        }
        for k in 0..=EHRHART_MAX_K {
            let p = eval_polynomial(&base.polynomial, k);
            let count = ehrhart_count(&gens, k);
            check(p == BigRational::from_integer(BigInt::from(count)), || {
                format!("{name}: P({k}) = {p}, lattice points {count}")
            })?;
        }
        let lex = triangulated_cone(&big(&gens), LatticeMode::AmbientLattice, FmOptions::default())
            .map_err(|e| e.to_string())?
            .1
            .total_multiplicity();
        check(base.h_vector.sum() == base.total_multiplicity() && base.h_vector.sum() == lex, || {
            format!("{name}: sum of h {} vs multiplicity {} / {lex}", base.h_vector.sum(), base.total_multiplicity())
        })?;
        let m = base.generators.len();
        for t in 0..INVARIANCE_TRIALS {
            let opts = random_lift_options(&mut rng, m);
            let other = hilbert_series(&cone, &opts).map_err(|e| format!("{name} trial {t}: {e}"))?;
            check(other.h_vector == base.h_vector, || {
                format!("{name} trial {t}: h-vector {:?} differs from {h:?}", other.h_vector.coefficients)
            })?;
            check(other.h_vector.sum() == other.total_multiplicity(), || {
                format!("{name} trial {t}: sum of h differs from multiplicity")
            })?;
        }
        summary.push(format!("{name} h={h:?}"));
    }
    Ok(summary.join("; "))
}

fn shelling_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0005);
    let mut cells = 0;
    for case in 0..SHELLING_INSTANCES {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d + 1..=8);
        let gens = random_polytope(&mut rng, d, n, 4);
        let cone = Cone::from_generators(&big(&gens), LatticeMode::AmbientLattice).map_err(|e| e.to_string())?;
        let series = hilbert_series(&cone, &LiftOptions::default()).map_err(|e| format!("case {case}: {e}"))?;
        let order = &series.triangulation.cells;
        for k in 1..=order.len() {
            check(is_shelling(&order[..k], d), || format!("case {case} {gens:?}: prefix {k} is not shellable"))?;
        }
        cells += order.len();
    }
    Ok(format!("{SHELLING_INSTANCES} instances, {cells} cells, every prefix valid"))
}

fn fm_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0006);
    let mut steps = 0;
    for case in 0..FM_CONES {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(d..=8);
        let gens = loop {
            let g = random_full_cone(&mut rng, d, n, -4, 6);
            if is_pointed(&g) {
                break g;
            }
        };
        let gens_big = big(&gens);
        for threshold in [Some(0), Some(usize::MAX)] {
            let opts = FmOptions {
                nonsimplicial_threshold: threshold,
            };
            let mut hull = Hull::new(d, gens_big.clone(), opts).map_err(|e| e.to_string())?;
            let basis = hull.independent_prefix();
            hull.start_simplex(&basis).map_err(|e| e.to_string())?;
            for i in (0..n).filter(|i| !basis.contains(i)) {
                let before = hull.forms();
                let mut seen: Vec<_> = hull.inserted().iter().map(|&j| gens_big[j].clone()).collect();
                seen.push(gens_big[i].clone());
                let raw = raw_fm_step(&before, &gens_big[i]);
                let expected = naive_facets(&raw.candidate_forms(&before), &seen);
                hull.insert_generator(i);
                let mut got = hull.forms();
                got.sort();
                check(got == expected, || {
                    format!("case {case} {gens:?}, threshold {threshold:?}, step {i}: {} vs {} facets", got.len(), expected.len())
                })?;
                steps += 1;
            }
            let mut last = hull.forms();
            last.sort();
            check(small(&last) == brute_facets(&gens), || format!("case {case}: final facets differ from brute force"))?;
        }
        let forms: Vec<_> = dual_cone(&gens_big).map_err(|e| e.to_string())?.into_iter().map(|f| f.coeffs).collect();
        let mut rays: Vec<Vec<i64>> = dual_cone(&forms)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|f| to_i64(&f.coeffs))
            .collect();
        rays.sort();
        let expected = brute_extreme_rays(&gens);
        check(rays == expected, || format!("case {case}: dual of dual {rays:?}, extreme rays {expected:?}"))?;
    }
    Ok(format!("{FM_CONES} cones, {steps} insertions matched, dual of dual exact"))
}

fn volume_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b1d_0007);
    let mut volumes = Vec::new();
    for case in 0..VOLUME_POLYTOPES {
        let d = rng.gen_range(3..=4);
        let n = rng.gen_range(d..=8);
        let mut gens = random_polytope(&mut rng, d, n, 4);
        let mut reference: Option<BigInt> = None;
        for _ in 0..VOLUME_ORDERS {
            gens.shuffle(&mut rng);
            let (_, tri) = triangulated_cone(&big(&gens), LatticeMode::AmbientLattice, FmOptions::default())
                .map_err(|e| e.to_string())?;
            let vol = tri.total_multiplicity();
            match &reference {
                None => reference = Some(vol),
                Some(r) => check(&vol == r, || format!("case {case}: volume {vol} vs {r}"))?,
            }
        }
        volumes.push(reference.unwrap().to_string());
    }
    Ok(format!("volumes [{}] stable over {VOLUME_ORDERS} orders", volumes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("magic squares 4x4", magic_squares),
        ("oracle equivalence", oracle_equivalence),
        ("parallelotope counting", parallelotope_counting),
        ("h-vector desk checks", h_vector_checks),
        ("shelling validity", shelling_validity),
        ("Fourier-Motzkin refinement", fm_equivalence),
        ("volume invariance", volume_invariance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {name}: {reason} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
