//! Algebra homomorphisms, C-pairs and the relations between them.

use std::collections::BTreeSet;

use super::algebra::FiniteAlgebra;
use super::ideals::{
    compatibility_classes, generated_ideal, is_type_c, is_type_c_ideal, power_submodule,
    stable_power, type_c_ideals, type_c_submodules, type_d_submodules,
};
use super::linalg::{axpy, dot, nullspace, Submodule};
use crate::error::{Error, Result};

/// A verified `F_p`-algebra homomorphism, stored as the images of the domain
/// basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraHom {
    images: Vec<Vec<u64>>,
    target_rank: usize,
    p: u64,
}

impl AlgebraHom {
    pub fn new(dom: &FiniteAlgebra, cod: &FiniteAlgebra, images: Vec<Vec<u64>>) -> Result<Self> {
        if dom.prime() != cod.prime() {
            return Err(Error::Precondition("algebras have different base fields".into()));
        }
        if images.len() != dom.rank() || images.iter().any(|v| v.len() != cod.rank()) {
            return Err(Error::Precondition("image matrix has the wrong shape".into()));
        }
        let p = dom.prime();
        let images = images
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % p).collect())
            .collect();
        let phi = AlgebraHom {
            images,
            target_rank: cod.rank(),
            p,
        };
        if phi.apply(dom.identity()) != cod.identity() {
            return Err(Error::Precondition("map does not send e to e'".into()));
        }
        for i in 0..dom.rank() {
            for j in 0..dom.rank() {
                let lhs = phi.apply(&dom.structure_constants()[i][j]);
                let rhs = cod.mul(&phi.images[i], &phi.images[j]);
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "map is not multiplicative on b{i} b{j}"
                    )));
                }
            }
        }
        Ok(phi)
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        let images = (0..alg.rank()).map(|i| alg.basis_vector(i)).collect();
        AlgebraHom::new(alg, alg, images).expect("identity is a homomorphism")
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.target_rank];
        for (c, img) in x.iter().zip(&self.images) {
            axpy(&mut out, *c, img, self.p);
        }
        out
    }

    pub fn image(&self, s: &Submodule) -> Submodule {
        Submodule::span(self.p, self.target_rank, s.basis().iter().map(|v| self.apply(v)))
    }

    /// `{v : phi(v) in s}`.
    pub fn preimage(&self, s: &Submodule) -> Submodule {
        let dual = s.annihilator();
        let rows: Vec<Vec<u64>> = dual
            .basis()
            .iter()
            .map(|w| self.images.iter().map(|img| dot(w, img, self.p)).collect())
            .collect();
        let n = self.images.len();
        Submodule::span(self.p, n, nullspace(rows, n, self.p))
    }

    pub fn kernel(&self) -> Submodule {
        self.preimage(&Submodule::zero(self.p, self.target_rank))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        Submodule::span(self.p, self.target_rank, self.images.clone()).is_full()
    }
}

/// `phi^-1(lambda')` for a type-C ideal of the codomain; the result is of type C.
pub fn pullback_ideal(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    phi: &AlgebraHom,
    lambda: &Submodule,
) -> Result<Submodule> {
    if !is_type_c(cod, lambda)? {
        return Err(Error::Precondition(format!(
            "{} is not of type C",
            cod.format_submodule(lambda)
        )));
    }
    let pulled = phi.preimage(lambda);
    debug_assert!(is_type_c_ideal(dom, &pulled));
    Ok(pulled)
}

/// An algebra with a non-empty set of type-C ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPair {
    sigma: Vec<Submodule>,
}

impl CPair {
    pub fn new(alg: &FiniteAlgebra, sigma: impl IntoIterator<Item = Submodule>) -> Result<Self> {
        let sigma: Vec<Submodule> = sigma.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if sigma.is_empty() {
            return Err(Error::Precondition("sigma must be non-empty".into()));
        }
        for l in &sigma {
            if !is_type_c(alg, l)? {
                return Err(Error::Precondition(format!(
                    "{} is not of type C",
                    alg.format_submodule(l)
                )));
            }
        }
        Ok(CPair { sigma })
    }

    /// Sigma = all type-C ideals.
    pub fn complete(alg: &FiniteAlgebra) -> Result<Self> {
        CPair::new(alg, type_c_ideals(alg)?)
    }

    pub fn sigma(&self) -> &[Submodule] {
        &self.sigma
    }

    pub fn contains(&self, l: &Submodule) -> bool {
        self.sigma.binary_search(l).is_ok()
    }

    pub fn is_complete(&self, alg: &FiniteAlgebra) -> Result<bool> {
        Ok(type_c_ideals(alg)?.len() == self.sigma.len())
    }

    /// Each ideal has some type-D submodule generating it.
    pub fn is_d_pair(&self, alg: &FiniteAlgebra) -> Result<bool> {
        let ds = type_d_submodules(alg)?;
        let ideals: BTreeSet<Submodule> = ds.iter().map(|a| generated_ideal(alg, a)).collect();
        Ok(self.sigma.iter().all(|l| ideals.contains(l)))
    }

    /// `Lambda°` for every `Lambda` in sigma, concatenated.
    pub fn sigma_bar(&self, alg: &FiniteAlgebra) -> Result<Vec<Submodule>> {
        let ds = type_d_submodules(alg)?;
        Ok(ds
            .into_iter()
            .filter(|a| self.contains(&generated_ideal(alg, a)))
            .collect())
    }
}

/// `A` and its type-D submodules generating `lambda`.
pub fn lambda_circle(alg: &FiniteAlgebra, lambda: &Submodule) -> Result<Vec<Submodule>> {
    Ok(type_d_submodules(alg)?
        .into_iter()
        .filter(|a| generated_ideal(alg, a) == *lambda)
        .collect())
}

pub fn is_separated(alg: &FiniteAlgebra, pair: &CPair) -> bool {
    pair.sigma
        .iter()
        .fold(alg.full(), |acc, l| acc.intersection(l))
        .is_zero()
}

/// Per-ideal limit of `Lambda ⊇ Lambda^2 ⊇ ...`, with the index at which it
/// stabilises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analyticity {
    pub analytic: bool,
    pub stabilization: Vec<usize>,
}

pub fn is_analytic(alg: &FiniteAlgebra, pair: &CPair) -> Analyticity {
    let mut analytic = true;
    let mut stabilization = Vec::new();
    for l in &pair.sigma {
        let (lim, k) = stable_power(alg, l);
        analytic &= lim.is_zero();
        stabilization.push(k);
    }
    Analyticity {
        analytic,
        stabilization,
    }
}

/// Per-ideal witness `A` with `A = (+)_n A^n`, and the first `n` with `A^n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialType {
    pub polynomial: bool,
    pub witnesses: Vec<Option<(Submodule, usize)>>,
}

pub fn is_polynomial_type(alg: &FiniteAlgebra, pair: &CPair) -> Result<PolynomialType> {
    let mut witnesses = Vec::new();
    for l in &pair.sigma {
        let found = lambda_circle(alg, l)?
            .into_iter()
            .find_map(|a| graded_length(alg, &a).map(|n| (a, n)));
        witnesses.push(found);
    }
    Ok(PolynomialType {
        polynomial: witnesses.iter().all(Option::is_some),
        witnesses,
    })
}

/// `Some(n)` when `A^0 (+) ... (+) A^(n-1)` is direct, fills the algebra and
/// `A^n = 0`.
fn graded_length(alg: &FiniteAlgebra, a: &Submodule) -> Option<usize> {
    let mut total = 0;
    let mut sum = alg.zero_submodule();
    for k in 0..=alg.rank() {
        let pk = power_submodule(alg, a, k);
        if pk.is_zero() {
            return (total == alg.rank() && sum.is_full()).then_some(k);
        }
        total += pk.rank();
        sum = sum.sum(&pk);
        if total > alg.rank() {
            return None;
        }
    }
    None
}

/// The map `Sigma' -> Sigma`, `Lambda' -> phi^-1(Lambda')`, as indices into
/// `pair.sigma()`; `None` if some preimage is not in `Sigma`.
pub fn induced_map(phi: &AlgebraHom, pair: &CPair, pair2: &CPair) -> Option<Vec<usize>> {
    pair2
        .sigma
        .iter()
        .map(|l| pair.sigma.binary_search(&phi.preimage(l)).ok())
        .collect()
}

pub fn is_c_homomorphism(phi: &AlgebraHom, pair: &CPair, pair2: &CPair) -> bool {
    induced_map(phi, pair, pair2).is_some()
}

/// Domination check: `phi` is an injective C-homomorphism between D-pairs and,
/// for every type-C ideal `L'` of the codomain with `phi^-1(L')` in Sigma,
/// `L'` is in Sigma' and `phi` maps every `A` in `C(A)` generating
/// `phi^-1(L')` to a type-C submodule generating `L'`.
pub fn is_domination(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    phi: &AlgebraHom,
    pair: &CPair,
    pair2: &CPair,
) -> Result<bool> {
    if !phi.is_injective() {
        return Err(Error::Precondition("a domination must be injective".into()));
    }
    if !pair.is_d_pair(dom)? || !pair2.is_d_pair(cod)? {
        return Err(Error::Precondition("both pairs must be D-pairs".into()));
    }
    if !is_c_homomorphism(phi, pair, pair2) {
        return Ok(false);
    }
    let dom_c = type_c_submodules(dom)?;
    let cod_c: BTreeSet<Submodule> = type_c_submodules(cod)?.into_iter().collect();
    for l2 in type_c_ideals(cod)? {
        let l = phi.preimage(&l2);
        if !pair.contains(&l) {
            continue;
        }
        if !pair2.contains(&l2) {
            return Ok(false);
        }
        for a in dom_c.iter().filter(|a| generated_ideal(dom, a) == l) {
            let img = phi.image(a);
            if !cod_c.contains(&img) || generated_ideal(cod, &img) != l2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The rank-one algebra `F_p`, whose only smooth structure is `{{0}}`.
pub fn base_field(p: u64) -> Result<FiniteAlgebra> {
    FiniteAlgebra::product_of_fields(p, 1)?.with_names(vec!["1".into()])
}

/// `pi0_Lambda` as a homomorphism onto the base field.
pub fn character_hom(alg: &FiniteAlgebra, lambda: &Submodule) -> Result<AlgebraHom> {
    let ch = super::ideals::projection_character(alg, lambda)?;
    let target = base_field(alg.prime())?;
    AlgebraHom::new(alg, &target, ch.values().iter().map(|&v| vec![v]).collect())
}

/// A maximal smooth pair: the ideals and the structure `Sigma-bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothPair {
    pub sigma: Vec<Submodule>,
    pub structure: Vec<Submodule>,
}

/// All maximal smooth pairs: maximal sets of type-D ideals whose type-D
/// submodules are pairwise compatible. Compatibility is measured through all
/// type-C submodules.
pub fn smooth_pairs(alg: &FiniteAlgebra) -> Result<Vec<SmoothPair>> {
    let universe = type_c_submodules(alg)?;
    let class = compatibility_classes(alg, &universe);
    let ds = type_d_submodules(alg)?;
    let class_of = |a: &Submodule| class[universe.iter().position(|u| u == a).expect("type D is type C")];

    let ideals: Vec<Submodule> = ds
        .iter()
        .map(|a| generated_ideal(alg, a))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let circles: Vec<Vec<Submodule>> = ideals
        .iter()
        .map(|l| ds.iter().filter(|a| generated_ideal(alg, a) == *l).cloned().collect())
        .collect();
    let fits = |i: usize, j: usize| {
        circles[i]
            .iter()
            .all(|a| circles[j].iter().all(|b| class_of(a) == class_of(b)))
    };
    let n = ideals.len();
    let vertices: Vec<usize> = (0..n).filter(|&i| fits(i, i)).collect();
    let adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| vertices.iter().copied().filter(|&j| j != i && fits(i, j)).collect())
        .collect();

    if vertices.is_empty() {
        return Ok(vec![]);
    }
    let mut cliques = Vec::new();
    bron_kerbosch(
        &adj,
        BTreeSet::new(),
        vertices.iter().copied().collect(),
        BTreeSet::new(),
        &mut cliques,
    );
    Ok(cliques
        .into_iter()
        .map(|c| SmoothPair {
            sigma: c.iter().map(|&i| ideals[i].clone()).collect(),
            structure: c.iter().flat_map(|&i| circles[i].clone()).collect(),
        })
        .collect())
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    for v in p.clone() {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calgebra::ideals::projections;

    #[test]
    fn homomorphism_validation() {
        let f3 = base_field(3).unwrap();
        let f33 = FiniteAlgebra::product_of_fields(3, 2).unwrap();
        let diag = AlgebraHom::new(&f3, &f33, vec![vec![1, 1]]).unwrap();
        assert!(diag.is_injective());
        assert!(!diag.is_surjective());
        assert!(AlgebraHom::new(&f3, &f33, vec![vec![1, 0]]).is_err());
        let d = FiniteAlgebra::dual_numbers(5).unwrap();
        // eps -> 1 is not multiplicative.
        assert!(AlgebraHom::new(&d, &d, vec![vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn pullback_examples() {
        let f3 = base_field(3).unwrap();
        let f33 = FiniteAlgebra::product_of_fields(3, 2).unwrap();
        let diag = AlgebraHom::new(&f3, &f33, vec![vec![1, 1]]).unwrap();
        let ker2 = f33.span([vec![1, 0]]);
        assert!(pullback_ideal(&f3, &f33, &diag, &ker2).unwrap().is_zero());

        let d = FiniteAlgebra::dual_numbers(5).unwrap();
        let f5 = base_field(5).unwrap();
        let quot = AlgebraHom::new(&d, &f5, vec![vec![1], vec![0]]).unwrap();
        let pulled = pullback_ideal(&d, &f5, &quot, &f5.zero_submodule()).unwrap();
        assert_eq!(pulled, d.span([vec![0, 1]]));

        let id = AlgebraHom::identity(&d);
        assert_eq!(pullback_ideal(&d, &d, &id, &pulled).unwrap(), pulled);
    }

    #[test]
    fn pair_properties() {
        let f33 = FiniteAlgebra::product_of_fields(3, 2).unwrap();
        let full = CPair::complete(&f33).unwrap();
        assert!(is_separated(&f33, &full));
        assert!(!full.is_d_pair(&f33).unwrap());

        let d = FiniteAlgebra::dual_numbers(5).unwrap();
        let pair = CPair::complete(&d).unwrap();
        assert!(!is_separated(&d, &pair));
        assert_eq!(
            is_analytic(&d, &pair),
            Analyticity {
                analytic: true,
                stabilization: vec![2]
            }
        );
        assert!(is_polynomial_type(&d, &pair).unwrap().polynomial);

        let one = base_field(2).unwrap();
        let trivial = CPair::new(&one, [one.zero_submodule()]).unwrap();
        assert!(is_separated(&one, &trivial));
        assert!(is_analytic(&one, &trivial).analytic);
        assert!(is_polynomial_type(&one, &trivial).unwrap().polynomial);

        assert!(CPair::new(&d, []).is_err());
        assert!(CPair::new(&d, [d.zero_submodule()]).is_err());
    }

    #[test]
    fn c_homomorphisms_and_dominations() {
        let d = FiniteAlgebra::dual_numbers(5).unwrap();
        let pair = CPair::complete(&d).unwrap();
        let id = AlgebraHom::identity(&d);
        assert!(is_c_homomorphism(&id, &pair, &pair));
        assert!(is_domination(&d, &d, &id, &pair, &pair).unwrap());
        // eps -> 2 eps is an automorphism.
        let dbl = AlgebraHom::new(&d, &d, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert!(is_domination(&d, &d, &dbl, &pair, &pair).unwrap());

        let f3 = base_field(3).unwrap();
        let f33 = FiniteAlgebra::product_of_fields(3, 2).unwrap();
        let diag = AlgebraHom::new(&f3, &f33, vec![vec![1, 1]]).unwrap();
        let p1 = CPair::complete(&f3).unwrap();
        let p2 = CPair::complete(&f33).unwrap();
        assert!(is_c_homomorphism(&diag, &p1, &p2));
        assert!(matches!(
            is_domination(&f3, &f33, &diag, &p1, &p2),
            Err(Error::Precondition(_))
        ));
        let quot = AlgebraHom::new(&d, &base_field(5).unwrap(), vec![vec![1], vec![0]]).unwrap();
        assert!(matches!(
            is_domination(&d, &base_field(5).unwrap(), &quot, &pair, &CPair::complete(&base_field(5).unwrap()).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn character_hom_matches_projection() {
        let d = FiniteAlgebra::dual_numbers(5).unwrap();
        let l = d.span([vec![0, 1]]);
        let h = character_hom(&d, &l).unwrap();
        for y in d.elements().unwrap() {
            assert_eq!(h.apply(&y)[0], projections(&d, &l, &y).unwrap().0);
        }
    }

    #[test]
    fn smooth_pairs_examples() {
        let t = FiniteAlgebra::truncated_polynomial(2, 3).unwrap();
        let sp = smooth_pairs(&t).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].structure.len(), 2);
        let f33 = FiniteAlgebra::product_of_fields(3, 2).unwrap();
        assert!(smooth_pairs(&f33).unwrap().is_empty());
        let one = base_field(3).unwrap();
        let sp = smooth_pairs(&one).unwrap();
        assert_eq!(sp, vec![SmoothPair { sigma: vec![one.zero_submodule()], structure: vec![one.zero_submodule()] }]);
    }
}
