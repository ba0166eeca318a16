mod common;

use bernfit::bvcore::{assemble_bv_generic, binomial, bv_determinant_generic};
use bernfit::neville::{complete_neville, is_triangular_totally_positive};
use bernfit::tnbdbv::{expand_bd_generic, tnbdbv_generic};
use bernfit::{
    assemble_bv, bv_determinant, expand_bd, experiments, tnbdbv, tnqr, tnqr_with_stats, tnsolve, BDForm, Matrix,
};
use common::{det_cofactor, max_entry_rel_err, random_nodes, random_rational_nodes, rel_err, submatrix};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn orthogonality_defect(q: &Matrix<f64>) -> f64 {
    let qtq = q.transpose().matmul(q).unwrap();
    let mut worst = 0.0f64;
    for i in 0..qtq.rows() {
        for j in 0..qtq.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((qtq[(i, j)] - target).abs());
        }
    }
    worst
}

/// `Q [R; 0]` densely.
fn reconstruct(q: &Matrix<f64>, r: &Matrix<f64>) -> Matrix<f64> {
    let padded = Matrix::from_fn(q.cols(), r.cols(), |i, j| if i < r.rows() { r[(i, j)] } else { 0.0 });
    q.matmul(&padded).unwrap()
}

/// Normwise error `max|QR - A| / max|A|` and componentwise backward error
/// `max |QR - A| / (|Q||R|)`.
fn reconstruction_errors(q: &Matrix<f64>, r: &Matrix<f64>, a: &Matrix<f64>) -> (f64, f64) {
    let qr = reconstruct(q, r);
    let mut comp = 0.0f64;
    let mut diff = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let scale: f64 = (0..r.rows()).map(|t| (q[(i, t)] * r[(t, j)]).abs()).sum();
            let e = (qr[(i, j)] - a[(i, j)]).abs();
            diff = diff.max(e);
            comp = comp.max(e / scale);
        }
    }
    (diff / a.max_abs(), comp)
}

#[test]
fn example_5_1_qr() {
    let ex = experiments::example_5_1();
    let f = tnqr(&tnbdbv(&ex.nodes, ex.degree).unwrap()).unwrap();
    assert_eq!((f.q.rows(), f.q.cols()), (21, 21));
    assert_eq!((f.r_bd.rows(), f.r_bd.cols()), (16, 16));
    assert!(orthogonality_defect(&f.q) <= 21e-14);
    let (normwise, componentwise) =
        reconstruction_errors(&f.q, &expand_bd(&f.r_bd), &assemble_bv(&ex.nodes, ex.degree).unwrap());
    assert!(
        normwise <= 1e-13 && componentwise <= 1e-13,
        "{normwise:e} {componentwise:e}"
    );
}

#[test]
fn example_factorization_matches_complete_neville() {
    for ex in [experiments::example_5_1(), experiments::example_5_2()] {
        let bd = tnbdbv(&ex.nodes, ex.degree).unwrap();
        let exact: Vec<BigRational> = ex
            .nodes
            .as_slice()
            .iter()
            .map(|&x| BigRational::from_float(x).unwrap())
            .collect();
        let neville = complete_neville(&assemble_bv_generic(&exact, ex.degree))
            .unwrap()
            .map(|v| v.to_f64().unwrap());
        let err = max_entry_rel_err(bd.compact(), &neville);
        assert!(err <= 1e-12, "{}: {err:e}", ex.id);
        let rec = max_entry_rel_err(&expand_bd(&bd), &assemble_bv(&ex.nodes, ex.degree).unwrap());
        assert!(rec <= 1e-13, "{}: reconstruction {rec:e}", ex.id);
    }
}

#[test]
fn reconstruction_random() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=30);
        let nodes = random_nodes(&mut rng, rows, 1e-4);
        let n = rng.gen_range(0..=(rows - 1).min(20));
        let bd = tnbdbv(&nodes, n).unwrap();
        assert!(bd.is_positive());
        let err = max_entry_rel_err(&expand_bd(&bd), &assemble_bv(&nodes, n).unwrap());
        assert!(err <= 1e-13, "rows={rows} n={n}: {err:e}");
    }
}

#[test]
fn closed_forms_equal_exact_neville() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..30 {
        let rows = rng.gen_range(1..=12);
        let nodes = random_rational_nodes(&mut rng, rows, 40);
        let n = rng.gen_range(0..rows);
        let a = assemble_bv_generic(&nodes, n);
        assert_eq!(complete_neville(&a).unwrap(), tnbdbv_generic(&nodes, n));
    }
}

#[test]
fn square_pivot_product_is_determinant() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..50 {
        let rows = rng.gen_range(1..=20);
        let nodes = random_nodes(&mut rng, rows, 1e-3);
        let bd = tnbdbv(&nodes, rows - 1).unwrap();
        let prod: f64 = (0..rows).map(|i| bd.diag(i)).product();
        assert!(rel_err(prod, bv_determinant(&nodes, rows - 1).unwrap()) <= 1e-13);
    }
}

/// Minors with `j` consecutive rows from `i` and the first `j` columns:
/// `Π_{t<j} C(n,t) · Π_r (1-x_r)^(n-j+1) · Π_{r<s} (x_s - x_r)`.
#[test]
fn consecutive_row_initial_column_minors() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..10 {
        let nodes = random_rational_nodes(&mut rng, 7, 30);
        let n = 4;
        let a = assemble_bv_generic(&nodes, n);
        for j in 1..=n + 1 {
            for i in 0..=nodes.len() - j {
                let rows: Vec<usize> = (i..i + j).collect();
                let cols: Vec<usize> = (0..j).collect();
                let minor = det_cofactor(&submatrix(&a, &rows, &cols));
                let mut closed: BigRational = (0..j).map(|t| binomial::<BigRational>(n, t)).product();
                for &r in &rows {
                    let c = BigRational::from_integer(1.into()) - nodes[r].clone();
                    for _ in 0..n + 1 - j {
                        closed *= c.clone();
                    }
                }
                closed *= bv_determinant_generic(&rows.iter().map(|&r| nodes[r].clone()).collect::<Vec<_>>())
                    / (0..j)
                        .map(|t| binomial::<BigRational>(j - 1, t))
                        .product::<BigRational>();
                assert_eq!(minor, closed, "i={i} j={j}");
            }
        }
    }
}

#[test]
fn qr_properties_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..60 {
        let rows = rng.gen_range(1..=40);
        let nodes = random_nodes(&mut rng, rows, 1e-3);
        let n = rng.gen_range(0..=(rows - 1).min(20));
        let bd = tnbdbv(&nodes, n).unwrap();
        let f = tnqr(&bd).unwrap();
        let defect = orthogonality_defect(&f.q);
        assert!(defect <= 1e-14 * rows as f64, "rows={rows} n={n}: {defect:e}");
        let r = expand_bd(&f.r_bd);
        let (normwise, componentwise) = reconstruction_errors(&f.q, &r, &assemble_bv(&nodes, n).unwrap());
        assert!(normwise <= 1e-13, "rows={rows} n={n}: {normwise:e}");
        assert!(componentwise <= 1e-13, "rows={rows} n={n}: {componentwise:e}");
        let verdict = is_triangular_totally_positive(&r);
        assert!(verdict.holds(), "rows={rows} n={n}: {:?}", verdict.witness);
        assert!((0..=n).all(|i| f.r_bd.diag(i) > 0.0));
    }
}

/// The exact solution rounded to doubles can already leave a residual far
/// above `1e-13 ||d||` when `|R||c|` dwarfs `|d|`, so the residual is scaled by
/// `|R||c|` and the solution itself is checked against exact arithmetic.
#[test]
fn tnsolve_residual_random() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..100 {
        let k = rng.gen_range(1..=16);
        let m = Matrix::from_fn(k, k, |i, j| if i <= j { rng.gen_range(0.1..10.0) } else { 0.0 });
        let r_bd = BDForm::from_matrix(m).unwrap();
        let d: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c = tnsolve(&r_bd, &d).unwrap();
        let rc = expand_bd(&r_bd).mul_vec(&c).unwrap();
        let r = expand_bd(&r_bd);
        for i in 0..k {
            let scale: f64 = (0..k).map(|j| (r[(i, j)] * c[j]).abs()).sum::<f64>() + d[i].abs();
            assert!((rc[i] - d[i]).abs() <= 1e-13 * scale, "k={k} row {i}");
        }

        let rx = expand_bd_generic(&r_bd.compact().map(|v| BigRational::from_float(*v).unwrap()));
        let mut exact = vec![BigRational::zero(); k];
        for i in (0..k).rev() {
            let mut acc = BigRational::from_float(d[i]).unwrap();
            for j in i + 1..k {
                acc -= rx[(i, j)].clone() * exact[j].clone();
            }
            exact[i] = acc / rx[(i, i)].clone();
        }
        for i in 0..k {
            let e = exact[i].to_f64().unwrap();
            assert!(rel_err(c[i], e) <= 1e-13, "k={k} component {i}: {} vs {e}", c[i]);
        }
    }
}

#[test]
fn qr_cost_scales_as_l_squared_n() {
    let mut rng = StdRng::seed_from_u64(23);
    let sizes = [(20usize, 10usize), (40, 20), (80, 40)];
    let mut per_unit = Vec::new();
    let mut points = Vec::new();
    for &(rows, cols) in &sizes {
        let nodes = random_nodes(&mut rng, rows, 1e-4);
        let (_, stats) = tnqr_with_stats(&tnbdbv(&nodes, cols - 1).unwrap()).unwrap();
        let l = (rows - 1) as f64;
        let n = (cols - 1) as f64;
        per_unit.push(stats.flops as f64 / (l * l * n));
        points.push(((rows as f64).ln(), (stats.flops as f64).ln()));
    }
    let (lo, hi) = per_unit
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo <= 4.0, "flops/(l²n) drifted: {per_unit:?}");
    let slope = (points[2].1 - points[0].1) / (points[2].0 - points[0].0);
    assert!((2.5..=3.5).contains(&slope), "fitted exponent {slope}");
}
