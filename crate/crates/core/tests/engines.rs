use std::collections::BTreeMap;

use vosa_core::fermion::{build_fermion_vosa, FermionSpace};
use vosa_core::kernel::{rat, Scalar, SparseVector, Weight};
use vosa_core::lattice::{build_lattice_vosa, lattice_points, IntegralLattice};
use vosa_core::ns::{build_ns_vosa, simple_quotient_dims, NsParams, NsVerma};
use vosa_core::structure::{direct_sum, tensor_product};
use vosa_core::vosa::{invariance_check_all, verify_axioms, TruncatedVosa};

/// Power series in `q^{1/2}`; index `t` holds the coefficient of `q^{t/2}`.
type Series = Vec<i64>;

fn one(len: usize) -> Series {
    let mut s = vec![0; len];
    s[0] = 1;
    s
}

fn times_one_plus(s: &Series, step: usize) -> Series {
    let mut out = s.clone();
    for t in (step..s.len()).rev() {
        out[t] += s[t - step];
    }
    out
}

fn over_one_minus(s: &Series, step: usize) -> Series {
    let mut out = s.clone();
    for t in step..s.len() {
        out[t] += out[t - step];
    }
    out
}

fn dims_of(v: &TruncatedVosa) -> Series {
    let table: BTreeMap<i64, usize> = v
        .graded_dims()
        .into_iter()
        .map(|(w, d)| (w.twice(), d))
        .collect();
    (0..=v.cutoff().twice())
        .map(|t| table.get(&t).copied().unwrap_or(0) as i64)
        .collect()
}

fn fermion_series(n: usize, len: usize) -> Series {
    let mut s = one(len);
    for _ in 0..n {
        for step in (1..len).step_by(2) {
            s = times_one_plus(&s, step);
        }
    }
    s
}

fn lattice_series(gram: &[Vec<i64>], len: usize) -> Series {
    let rank = gram.len();
    let mut s = vec![0; len];
    let bound = len as i64;
    let mut point = vec![-bound; rank];
    loop {
        let norm: i64 = (0..rank)
            .flat_map(|i| (0..rank).map(move |j| (i, j)))
            .map(|(i, j)| point[i] * gram[i][j] * point[j])
            .sum();
        if (norm as usize) < len {
            s[norm as usize] += 1;
        }
        let mut k = 0;
        while k < rank && point[k] == bound {
            point[k] = -bound;
            k += 1;
        }
        if k == rank {
            break;
        }
        point[k] += 1;
    }
    for _ in 0..rank {
        for step in (2..len).step_by(2) {
            s = over_one_minus(&s, step);
        }
    }
    s
}

fn ns_vacuum_series(len: usize) -> Series {
    let mut s = one(len);
    for step in (3..len).step_by(2) {
        s = times_one_plus(&s, step);
    }
    for step in (4..len).step_by(2) {
        s = over_one_minus(&s, step);
    }
    s
}

fn ns_verma_series(len: usize) -> Series {
    let mut s = one(len);
    for step in (1..len).step_by(2) {
        s = times_one_plus(&s, step);
    }
    for step in (2..len).step_by(2) {
        s = over_one_minus(&s, step);
    }
    s
}

fn lattice(gram: Vec<Vec<i64>>, cutoff: i64) -> TruncatedVosa {
    build_lattice_vosa(
        &IntegralLattice::new(gram).unwrap(),
        Weight::int(cutoff),
        &[],
    )
    .unwrap()
    .into_vosa()
}

fn central_term(v: &TruncatedVosa) -> SparseVector {
    let x = v.virasoro(-2, v.vacuum()).unwrap();
    v.virasoro(2, &x).unwrap()
}

#[test]
fn fermion_dims_match_the_product_formula() {
    for n in 1..=3 {
        let v = build_fermion_vosa(&FermionSpace::orthonormal(n).unwrap(), Weight::int(4)).unwrap();
        assert_eq!(dims_of(&v), fermion_series(n, 9), "n = {n}");
    }
}

#[test]
fn lattice_dims_match_theta_over_eta() {
    for gram in [
        vec![vec![2]],
        vec![vec![1]],
        vec![vec![4]],
        vec![vec![2, -1], vec![-1, 2]],
        vec![vec![1, 0], vec![0, 1]],
    ] {
        let cutoff = if gram.len() == 1 { 4 } else { 2 };
        let v = lattice(gram.clone(), cutoff);
        assert_eq!(
            dims_of(&v),
            lattice_series(&gram, 2 * cutoff as usize + 1),
            "{gram:?}"
        );
    }
}

#[test]
fn odd_lattice_has_half_integer_weights() {
    let v = lattice(vec![vec![3]], 3);
    assert_eq!(dims_of(&v), lattice_series(&[vec![3]], 7));
    assert!(v.basis_at(Weight::from_twice(3)).len() > 0);
}

#[test]
fn lattice_points_cover_the_norm_ball() {
    let l = IntegralLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let roots: Vec<_> = lattice_points(&l, 2)
        .into_iter()
        .filter(|p| {
            let (a, b) = (p[0], p[1]);
            2 * a * a - 2 * a * b + 2 * b * b == 2
        })
        .collect();
    assert_eq!(roots.len(), 6);
}

#[test]
fn ns_vacuum_at_generic_charge() {
    let c = rat(15, 2);
    let v = build_ns_vosa(&c, Weight::int(4)).unwrap();
    assert_eq!(dims_of(&v), ns_vacuum_series(9));
    let quotient: Series = simple_quotient_dims(&NsParams::new(c, rat(0, 1)), Weight::int(4))
        .into_iter()
        .map(|(_, d)| d as i64)
        .collect();
    assert_eq!(quotient, ns_vacuum_series(9));
}

#[test]
fn verma_bases_have_partition_size() {
    let mut verma = NsVerma::new(NsParams::new(rat(7, 10), rat(1, 10)));
    let want = ns_verma_series(9);
    for (t, d) in want.iter().enumerate() {
        assert_eq!(
            verma.gram(Weight::from_twice(t as i64)).0.len() as i64,
            *d,
            "twice weight {t}"
        );
    }
}

#[test]
fn low_gram_entries_of_a_verma_module() {
    let h = rat(1, 10);
    let mut verma = NsVerma::new(NsParams::new(rat(7, 10), h.clone()));
    let (_, g) = verma.gram(Weight::from_twice(1));
    assert_eq!(*g.get(0, 0), Scalar::real(h.clone() * rat(2, 1)));
    let (_, g) = verma.gram(Weight::ONE);
    assert_eq!(g.dim(), 1);
    assert_eq!(*g.get(0, 0), Scalar::real(h * rat(2, 1)));
}

#[test]
fn central_charges_from_the_virasoro_relation() {
    let cases: Vec<(TruncatedVosa, Scalar)> = vec![
        (
            build_ns_vosa(&rat(7, 10), Weight::int(3)).unwrap(),
            Scalar::frac(7, 10),
        ),
        (
            build_fermion_vosa(&FermionSpace::orthonormal(3).unwrap(), Weight::int(3)).unwrap(),
            Scalar::frac(3, 2),
        ),
        (lattice(vec![vec![2, -1], vec![-1, 2]], 2), Scalar::int(2)),
    ];
    for (v, c) in cases {
        assert_eq!(*v.central_charge(), c, "{}", v.name());
        assert_eq!(
            central_term(&v),
            v.vacuum().scaled(&(c * Scalar::frac(1, 2))),
            "{}",
            v.name()
        );
    }
}

#[test]
fn every_engine_passes_invariance_and_axioms() {
    let algebras = vec![
        build_ns_vosa(&rat(7, 10), Weight::int(3)).unwrap(),
        build_fermion_vosa(&FermionSpace::orthonormal(2).unwrap(), Weight::int(3)).unwrap(),
        lattice(vec![vec![2, -1], vec![-1, 2]], 2),
        lattice(vec![vec![3]], 3),
    ];
    for v in &algebras {
        for r in invariance_check_all(v, None).unwrap() {
            assert!(r.passed(), "{}: {:?}", v.name(), r.failures.first());
        }
        assert!(verify_axioms(v).unwrap().passed(), "{}", v.name());
    }
}

#[test]
fn constructions_compose() {
    let f = build_fermion_vosa(&FermionSpace::orthonormal(1).unwrap(), Weight::int(3)).unwrap();
    let ff = tensor_product(&f, &f).unwrap();
    let fff = tensor_product(&ff, &f).unwrap();
    assert_eq!(dims_of(&fff), fermion_series(3, 7));
    assert_eq!(*fff.central_charge(), Scalar::frac(3, 2));
    let sum = direct_sum(&[
        &fff,
        &build_fermion_vosa(&FermionSpace::orthonormal(3).unwrap(), Weight::int(3)).unwrap(),
    ])
    .unwrap();
    let doubled: Series = fermion_series(3, 7).iter().map(|d| 2 * d).collect();
    assert_eq!(dims_of(&sum), doubled);
    for r in invariance_check_all(&sum, None).unwrap() {
        assert!(r.passed(), "{:?}", r.failures.first());
    }
}

#[test]
fn fermion_anticommutator_on_the_vacuum() {
    let v = build_fermion_vosa(&FermionSpace::orthonormal(1).unwrap(), Weight::int(2)).unwrap();
    let vac = v.vacuum();
    let raised = v.apply_generator(0, -1, vac).unwrap();
    assert!(!raised.is_zero());
    assert_eq!(v.apply_generator(0, 0, &raised).unwrap(), *vac);
    assert!(v.apply_generator(0, -1, &raised).unwrap().is_zero());
}
