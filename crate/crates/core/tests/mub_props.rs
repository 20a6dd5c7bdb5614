use mub_entropy::mub::{basis_vector, generate_mub_set, max_overlap, verify_mub_set, Basis};
use mub_entropy::qstate::{haar_random_state, PureState, Seed};
use num_complex::Complex;

const PRIMES: [usize; 6] = [2, 3, 5, 7, 11, 13];

/// Independent overlap oracle: explicit conjugated dot product.
fn overlap_sqr(a: &PureState<f64>, b: &PureState<f64>) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    re * re + im * im
}

#[test]
fn complete_sets_are_exhaustively_unbiased() {
    for p in PRIMES {
        let set = generate_mub_set::<f64>(p, p + 1).unwrap();
        assert_eq!(set.len(), p + 1);
        let bases = set.bases();
        for k in 0..bases.len() {
            for i in 0..p {
                for j in 0..p {
                    let want = if i == j { 1.0 } else { 0.0 };
                    let got = overlap_sqr(&bases[k].vectors()[i], &bases[k].vectors()[j]);
                    assert!((got - want).abs() <= 1e-10, "p={p} k={k} i={i} j={j}");
                }
            }
            for l in (k + 1)..bases.len() {
                for a in bases[k].vectors() {
                    for b in bases[l].vectors() {
                        assert!((overlap_sqr(a, b) - 1.0 / p as f64).abs() <= 1e-10);
                    }
                }
                let c = max_overlap(&bases[k], &bases[l]).unwrap();
                assert!((c - 1.0 / (p as f64).sqrt()).abs() <= 1e-10);
            }
        }
        let report = verify_mub_set(bases, 1e-10).unwrap();
        assert!(report.passed, "{report}");
    }
}

#[test]
fn lazy_vectors_agree_with_sets() {
    for p in [2, 3, 5, 7] {
        let set = generate_mub_set::<f64>(p, p + 1).unwrap();
        for (k, basis) in set.bases().iter().enumerate() {
            for (j, v) in basis.vectors().iter().enumerate() {
                assert_eq!(&basis_vector::<f64>(p, k, j).unwrap(), v);
            }
        }
    }
}

#[test]
fn partial_sets_are_prefixes() {
    let full = generate_mub_set::<f64>(7, 8).unwrap();
    for m in 1..=8 {
        let part = generate_mub_set::<f64>(7, m).unwrap();
        assert_eq!(part.bases(), &full.bases()[..m]);
    }
}

/// A Haar-random unitary's columns form a basis; overlap symmetry must hold.
fn random_basis(dim: usize, seed: u64) -> Basis<f64> {
    let mut cols: Vec<Vec<Complex<f64>>> = Vec::new();
    for k in 0..dim {
        let mut v = haar_random_state::<f64>(dim, Seed(seed).child(k as u64))
            .unwrap()
            .into_amplitudes();
        // modified Gram-Schmidt
        for c in &cols {
            let proj: Complex<f64> = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= n);
        cols.push(v);
    }
    let vectors = cols
        .into_iter()
        .map(|c| PureState::normalize(c).unwrap())
        .collect();
    Basis::new(0, vectors).unwrap()
}

#[test]
fn max_overlap_is_symmetric_and_bounded() {
    for dim in [2, 3, 4, 6] {
        for s in 0..10 {
            let a = random_basis(dim, s);
            let b = random_basis(dim, s + 100);
            let ab = max_overlap(&a, &b).unwrap();
            let ba = max_overlap(&b, &a).unwrap();
            assert!((ab - ba).abs() <= 1e-14);
            assert!(ab >= 1.0 / (dim as f64).sqrt() - 1e-12 && ab <= 1.0 + 1e-12);
        }
    }
}
