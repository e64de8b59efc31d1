use serde_json::{json, Value};

use super::spectral::{char_poly, rational_roots, spectral_projections};
use crate::error::Result;
use crate::kernel::serial::{matrix_to_json, scalar_to_json_compact, vector_to_json};
use crate::kernel::{Matrix, Scalar, SparseVector, Weight};
use crate::vosa::TruncatedVosa;

/// Ratio of the vertex-algebra form to the Killing form on one simple ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealRatio {
    pub basis: Vec<Vec<Scalar>>,
    pub ratio: Option<Scalar>,
    pub consistent: bool,
}

/// The Lie algebra `[u, v] = u_0 v` on the weight-one space.
#[derive(Clone, Debug)]
pub struct WeightOneAlgebra {
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
    /// `bracket[i][j]` holds the coordinates of `[b_i, b_j]`.
    pub bracket: Vec<Vec<Vec<Scalar>>>,
    /// `u_1 v = ⟨u, v⟩·1`, read off against the vacuum.
    pub form: Matrix,
    pub killing: Matrix,
    pub killing_rank: usize,
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub form_invariant: bool,
    pub hermitian_identity: bool,
    pub form_radical: Vec<Vec<Scalar>>,
    pub derived: Vec<Vec<Scalar>>,
    pub radical_meets_derived: bool,
    pub ideals: Vec<IdealRatio>,
}

impl WeightOneAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.derived.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.antisymmetric
            && self.jacobi
            && self.form_invariant
            && self.hermitian_identity
            && !self.radical_meets_derived
    }

    /// Coordinates of `[x, y]` for coordinate vectors `x`, `y`.
    pub fn bracket_of(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for (k, b) in self.bracket[i][j].iter().enumerate() {
                    out[k] += &(&c * b);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut table = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                table.push(json!({
                    "u": self.labels[i],
                    "v": self.labels[j],
                    "bracket": vector_to_json(&self.bracket[i][j]),
                }));
            }
        }
        json!({
            "dim": self.dim(),
            "basis": self.labels,
            "bracket": table,
            "form": matrix_to_json(&self.form),
            "killing": matrix_to_json(&self.killing),
            "killing_rank": self.killing_rank,
            "antisymmetric": self.antisymmetric,
            "jacobi": self.jacobi,
            "form_invariant": self.form_invariant,
            "hermitian_identity": self.hermitian_identity,
            "form_radical_dim": self.form_radical.len(),
            "derived_dim": self.derived.len(),
            "radical_meets_derived": self.radical_meets_derived,
            "ideals": self.ideals.iter().map(|r| json!({
                "dim": r.basis.len(),
                "form_over_killing": r.ratio.as_ref().map(scalar_to_json_compact),
                "consistent": r.consistent,
            })).collect::<Vec<_>>(),
        })
    }
}

fn dot(m: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                acc += &(&(a * b) * m.get(i, j));
            }
        }
    }
    acc
}

/// Row-reduced basis of the span of `vecs` with its pivot columns.
fn span(vecs: &[Vec<Scalar>], d: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    if vecs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = Matrix::from_fn(vecs.len(), d, |r, c| vecs[r][c].clone());
    let pivots = m.rref();
    let rows = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
    (rows, pivots)
}

/// Invariant form `⟨u, v⟩` on the weight-one basis: `(u_1 v, 1)/(1, 1)`.
pub(crate) fn weight_one_form(v: &TruncatedVosa) -> Result<(Vec<usize>, Matrix)> {
    let basis: Vec<usize> = v.basis_at(Weight::int(1)).collect();
    let vac = v.vacuum();
    let norm = v.form(vac, vac);
    let inv = norm.inv().unwrap_or_else(Scalar::zero);
    let mut entries = vec![vec![Scalar::zero(); basis.len()]; basis.len()];
    for (r, &i) in basis.iter().enumerate() {
        for (c, &j) in basis.iter().enumerate() {
            let x = v.apply_mode(&SparseVector::basis(i), 1, &SparseVector::basis(j))?;
            entries[r][c] = &v.form(&x, vac) * &inv;
        }
    }
    let d = basis.len();
    Ok((basis, Matrix::from_fn(d, d, |r, c| entries[r][c].clone())))
}

/// Centroid of a Lie algebra given by its adjoint matrices.
fn centroid(ads: &[Matrix], m: usize) -> Vec<Matrix> {
    let unknowns = m * m;
    let mut rows = Vec::new();
    for a in ads {
        // (T A - A T)_{rc} = Σ_k T_{rk} A_{kc} - A_{rk} T_{kc}
        for r in 0..m {
            for c in 0..m {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..m {
                    row[r * m + k] += a.get(k, c);
                    row[k * m + c] -= a.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let sys = Matrix::from_fn(rows.len(), unknowns, |r, c| rows[r][c].clone());
    sys.null_space()
        .into_iter()
        .map(|t| Matrix::from_fn(m, m, |r, c| t[r * m + c].clone()))
        .collect()
}

fn simple_ideals(
    derived: &[Vec<Scalar>],
    pivots: &[usize],
    alg: &WeightOneAlgebra,
) -> Option<Vec<Vec<Vec<Scalar>>>> {
    let m = derived.len();
    let coords = |z: &[Scalar]| -> Vec<Scalar> { pivots.iter().map(|&p| z[p].clone()).collect() };
    let ads: Vec<Matrix> = derived
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Scalar>> = derived
                .iter()
                .map(|y| coords(&alg.bracket_of(x, y)))
                .collect();
            Matrix::from_fn(m, m, |r, c| cols[c][r].clone())
        })
        .collect();
    let cent = centroid(&ads, m);
    let mut t = Matrix::zeros(m, m);
    for (k, b) in cent.iter().enumerate() {
        let s = Scalar::int(k as i64 + 1);
        t = Matrix::from_fn(m, m, |r, c| t.get(r, c) + &(b.get(r, c) * &s));
    }
    let roots = rational_roots(&char_poly(&t))?;
    if roots.iter().map(|r| r.1).sum::<usize>() != m {
        return None;
    }
    let eigs: Vec<_> = roots.into_iter().map(|r| r.0).collect();
    let mut out = Vec::new();
    for (_, p) in spectral_projections(&t, &eigs) {
        if p.mul(&p) != p {
            return None;
        }
        let cols: Vec<Vec<Scalar>> = (0..m).map(|c| p.column(c)).collect();
        let (rows, _) = span(&cols, m);
        let ideal = rows
            .iter()
            .map(|y| {
                let mut z = vec![Scalar::zero(); alg.dim()];
                for (k, c) in y.iter().enumerate() {
                    for (i, b) in derived[k].iter().enumerate() {
                        z[i] += &(c * b);
                    }
                }
                z
            })
            .collect();
        out.push(ideal);
    }
    Some(out)
}

/// Bracket, invariant form, Killing form and structural checks of the weight-one space.
pub fn weight_one_algebra(v: &TruncatedVosa) -> Result<WeightOneAlgebra> {
    let (basis, form) = weight_one_form(v)?;
    let d = basis.len();
    let labels = basis.iter().map(|&i| v.label(i).to_string()).collect();
    let mut bracket = vec![vec![Vec::new(); d]; d];
    for (r, &i) in basis.iter().enumerate() {
        for (c, &j) in basis.iter().enumerate() {
            let x = v.apply_mode(&SparseVector::basis(i), 0, &SparseVector::basis(j))?;
            bracket[r][c] = x.to_dense(&basis);
        }
    }
    let unit = |i: usize| -> Vec<Scalar> {
        (0..d)
            .map(|k| {
                if k == i {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    };
    let mut alg = WeightOneAlgebra {
        basis: basis.clone(),
        labels,
        bracket,
        form,
        killing: Matrix::zeros(d, d),
        killing_rank: 0,
        antisymmetric: true,
        jacobi: true,
        form_invariant: true,
        hermitian_identity: true,
        form_radical: Vec::new(),
        derived: Vec::new(),
        radical_meets_derived: false,
        ideals: Vec::new(),
    };

    for i in 0..d {
        for j in 0..d {
            let neg: Vec<Scalar> = alg.bracket[j][i].iter().map(|c| -c.clone()).collect();
            alg.antisymmetric &= alg.bracket[i][j] == neg;
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let a = alg.bracket_of(&alg.bracket[i][j], &unit(k));
                let b = alg.bracket_of(&alg.bracket[j][k], &unit(i));
                let c = alg.bracket_of(&alg.bracket[k][i], &unit(j));
                alg.jacobi &= (0..d).all(|t| (&(&a[t] + &b[t]) + &c[t]).is_zero());
                let lhs = dot(&alg.form, &alg.bracket[i][j], &unit(k));
                let rhs = dot(&alg.form, &unit(i), &alg.bracket[j][k]);
                alg.form_invariant &= lhs == rhs;
            }
        }
    }
    for &i in &basis {
        let u = SparseVector::basis(i);
        let pu = v.phi(&u);
        for &j in &basis {
            let x = SparseVector::basis(j);
            let ux = v.apply_mode(&u, 0, &x)?;
            for &k in &basis {
                let w = SparseVector::basis(k);
                let lhs = v.form(&ux, &w);
                let rhs = -v.form(&x, &v.apply_mode(&pu, 0, &w)?);
                alg.hermitian_identity &= lhs == rhs;
            }
        }
    }

    let ads: Vec<Matrix> = (0..d)
        .map(|i| Matrix::from_fn(d, d, |r, c| alg.bracket[i][c][r].clone()))
        .collect();
    alg.killing = Matrix::from_fn(d, d, |i, j| {
        let p = ads[i].mul(&ads[j]);
        let mut tr = Scalar::zero();
        for k in 0..d {
            tr += p.get(k, k);
        }
        tr
    });
    alg.killing_rank = alg.killing.rank();
    alg.form_radical = alg.form.null_space();

    let all_brackets: Vec<Vec<Scalar>> = alg.bracket.iter().flatten().cloned().collect();
    let (derived, pivots) = span(&all_brackets, d);
    alg.derived = derived;
    let mut joint = alg.form_radical.clone();
    joint.extend(alg.derived.iter().cloned());
    alg.radical_meets_derived =
        span(&joint, d).0.len() < alg.form_radical.len() + alg.derived.len();

    if !alg.derived.is_empty() {
        if let Some(ideals) = simple_ideals(&alg.derived, &pivots, &alg) {
            alg.ideals = ideals
                .into_iter()
                .map(|basis| {
                    let mut ratio: Option<Scalar> = None;
                    let mut consistent = true;
                    for x in &basis {
                        for y in &basis {
                            let k = dot(&alg.killing, x, y);
                            let f = dot(&alg.form, x, y);
                            match &ratio {
                                _ if k.is_zero() => consistent &= f.is_zero(),
                                None => ratio = Some(&f / &k),
                                Some(r) => consistent &= f == &k * r,
                            }
                        }
                    }
                    IdealRatio {
                        basis,
                        ratio,
                        consistent,
                    }
                })
                .collect();
        }
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{build_fermion_vosa, FermionSpace};
    use crate::lattice::{build_lattice_vosa, IntegralLattice};

    fn a1() -> TruncatedVosa {
        let l = IntegralLattice::new(vec![vec![2]]).unwrap();
        build_lattice_vosa(&l, Weight::int(2), &[])
            .unwrap()
            .into_vosa()
    }

    #[test]
    fn a1_is_sl2() {
        let v = a1();
        let g = weight_one_algebra(&v).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.passed());
        let h = g.labels.iter().position(|l| l == "a1(-1)1").unwrap();
        let e = g.labels.iter().position(|l| l == "e^(1)").unwrap();
        let f = g.labels.iter().position(|l| l == "e^(-1)").unwrap();
        assert_eq!(*g.form.get(h, h), Scalar::int(2));
        let coord = |v: &[Scalar], k: usize| v[k].clone();
        assert_eq!(coord(&g.bracket[h][e], e), Scalar::int(2));
        assert_eq!(coord(&g.bracket[h][f], f), Scalar::int(-2));
        let ef = &g.bracket[e][f];
        assert!(ef[e].is_zero() && ef[f].is_zero());
        assert_eq!(g.killing_rank, 3);
        assert_eq!(g.ideals.len(), 1);
        assert_eq!(g.ideals[0].ratio, Some(Scalar::frac(1, 4)));
        assert!(g.ideals[0].consistent);
        assert!(!g.radical_meets_derived);
    }

    #[test]
    fn even_rank_two_without_roots_is_abelian() {
        let l = IntegralLattice::new(vec![vec![4, 0], vec![0, 4]]).unwrap();
        let v = build_lattice_vosa(&l, Weight::int(2), &[])
            .unwrap()
            .into_vosa();
        let g = weight_one_algebra(&v).unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.is_abelian());
        assert!(g.passed());
        assert!(g.form_radical.is_empty());
        assert_eq!(g.killing_rank, 0);
    }

    #[test]
    fn square_lattice_has_two_sl2_ideals() {
        // norm-two vectors (±1, ±1) give four root vectors beside the two bosons
        let l = IntegralLattice::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let v = build_lattice_vosa(&l, Weight::int(2), &[])
            .unwrap()
            .into_vosa();
        let g = weight_one_algebra(&v).unwrap();
        assert_eq!(g.dim(), 6);
        assert!(g.passed());
        assert_eq!(g.killing_rank, 6);
        assert_eq!(g.ideals.len(), 2);
        for r in &g.ideals {
            assert_eq!(r.basis.len(), 3);
            assert!(r.consistent);
            assert_eq!(r.ratio, Some(Scalar::frac(1, 4)));
        }
    }

    #[test]
    fn fermion_has_no_weight_one() {
        let v = build_fermion_vosa(&FermionSpace::orthonormal(1).unwrap(), Weight::int(2)).unwrap();
        let g = weight_one_algebra(&v).unwrap();
        assert_eq!(g.dim(), 0);
        assert!(g.passed());
    }
}
