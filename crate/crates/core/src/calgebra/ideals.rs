//! Type-C ideals, type-C and type-D submodules, powers, graded decomposition
//! and compatibility.

use std::collections::{BTreeSet, VecDeque};

use super::algebra::{characters, Character, FiniteAlgebra};
use super::linalg::{solve, Submodule};
use crate::error::{Error, Result};

/// `S` is closed under multiplication by every basis element.
pub fn is_ideal(alg: &FiniteAlgebra, s: &Submodule) -> bool {
    s.basis().iter().all(|v| {
        (0..alg.rank()).all(|i| s.contains(&alg.mul(v, &alg.basis_vector(i))))
    })
}

/// `A = R e (+) Lambda` for an ideal `Lambda`.
pub fn is_type_c(alg: &FiniteAlgebra, lambda: &Submodule) -> Result<bool> {
    if !is_ideal(alg, lambda) {
        return Err(Error::Precondition(format!(
            "{} is not an ideal",
            alg.format_submodule(lambda)
        )));
    }
    Ok(is_type_c_ideal(alg, lambda))
}

/// Same as [`is_type_c`] but answers `false` for non-ideals.
pub(crate) fn is_type_c_ideal(alg: &FiniteAlgebra, lambda: &Submodule) -> bool {
    lambda.rank() + 1 == alg.rank() && !lambda.contains(alg.identity()) && is_ideal(alg, lambda)
}

/// `(pi0(y), pi(y))` with `y = pi0(y) e + pi(y)` and `pi(y)` in `lambda`.
pub fn projections(alg: &FiniteAlgebra, lambda: &Submodule, y: &[u64]) -> Result<(u64, Vec<u64>)> {
    if !is_type_c(alg, lambda)? {
        return Err(Error::Precondition(format!(
            "{} is not of type C",
            alg.format_submodule(lambda)
        )));
    }
    Ok(split(alg, lambda, y))
}

fn split(alg: &FiniteAlgebra, lambda: &Submodule, y: &[u64]) -> (u64, Vec<u64>) {
    let mut gens = vec![alg.identity().to_vec()];
    gens.extend(lambda.basis().iter().cloned());
    let c = solve(&gens, y, alg.prime()).expect("R e + Lambda spans the algebra");
    let scalar = c[0];
    let rest = alg.add(y, &alg.scalar_mul(alg.prime() - scalar % alg.prime(), alg.identity()));
    (scalar, rest)
}

/// `pi0` of a type-C ideal, as a character.
pub fn projection_character(alg: &FiniteAlgebra, lambda: &Submodule) -> Result<Character> {
    is_type_c(alg, lambda)?;
    let values = (0..alg.rank())
        .map(|i| split(alg, lambda, &alg.basis_vector(i)).0)
        .collect();
    Character::new(alg, values)
}

/// Image of `s` under `pi_lambda`.
pub fn project_submodule(alg: &FiniteAlgebra, lambda: &Submodule, s: &Submodule) -> Submodule {
    alg.span(s.basis().iter().map(|v| split(alg, lambda, v).1))
}

/// All type-C ideals, as kernels of characters.
pub fn type_c_ideals(alg: &FiniteAlgebra) -> Result<Vec<Submodule>> {
    Ok(character_bijection(alg)?.into_iter().map(|(_, k)| k).collect())
}

/// Characters paired with their kernels.
pub fn character_bijection(alg: &FiniteAlgebra) -> Result<Vec<(Character, Submodule)>> {
    let chars = characters(alg)?;
    let pairs: Vec<(Character, Submodule)> = chars
        .into_iter()
        .map(|c| {
            let k = c.kernel(alg);
            (c, k)
        })
        .collect();
    let kernels: BTreeSet<&Submodule> = pairs.iter().map(|(_, k)| k).collect();
    debug_assert_eq!(kernels.len(), pairs.len());
    Ok(pairs)
}

/// Span of all products `a b` with `a` in `a_mod`, `b` in `b_mod`.
pub fn product(alg: &FiniteAlgebra, a_mod: &Submodule, b_mod: &Submodule) -> Submodule {
    alg.span(
        a_mod
            .basis()
            .iter()
            .flat_map(|x| b_mod.basis().iter().map(move |y| alg.mul(x, y))),
    )
}

/// The ideal generated by `s`, i.e. `s . A`.
pub fn generated_ideal(alg: &FiniteAlgebra, s: &Submodule) -> Submodule {
    product(alg, s, &alg.full())
}

/// `A^k`: span of `k`-fold products; `A^0 = R e`.
pub fn power_submodule(alg: &FiniteAlgebra, a: &Submodule, k: usize) -> Submodule {
    let mut acc = alg.scalars();
    for _ in 0..k {
        acc = product(alg, &acc, a);
    }
    acc
}

/// Ideal generated by the `k`-fold products, `A^k . A`.
pub fn ideal_power(alg: &FiniteAlgebra, a: &Submodule, k: usize) -> Submodule {
    generated_ideal(alg, &power_submodule(alg, a, k))
}

/// Membership in `C(A)`: the generated ideal is of type C and no proper
/// submodule already generates a type-C ideal.
pub fn is_submodule_type_c(alg: &FiniteAlgebra, a: &Submodule) -> Result<bool> {
    if !is_type_c_ideal(alg, &generated_ideal(alg, a)) {
        return Ok(false);
    }
    alg.check_enumerable()?;
    // If some proper B works, every hyperplane of A containing B works too,
    // since its generated ideal sits between two equal type-C ideals.
    Ok(a
        .hyperplanes()
        .iter()
        .all(|b| !is_type_c_ideal(alg, &generated_ideal(alg, b))))
}

/// `A^k ∩ A̲^(k+1) = 0` for `1 <= k <= kmax` (default: the rank).
pub fn is_type_d(alg: &FiniteAlgebra, a: &Submodule, kmax: Option<usize>) -> Result<bool> {
    if !is_submodule_type_c(alg, a)? {
        return Err(Error::Precondition(format!(
            "{} is not a submodule of type C",
            alg.format_submodule(a)
        )));
    }
    Ok(type_d_condition(alg, a, kmax.unwrap_or(alg.rank())))
}

fn type_d_condition(alg: &FiniteAlgebra, a: &Submodule, kmax: usize) -> bool {
    (1..=kmax).all(|k| {
        power_submodule(alg, a, k)
            .intersection(&ideal_power(alg, a, k + 1))
            .is_zero()
    })
}

/// Every submodule of type C, grouped by nothing in particular but sorted.
pub fn type_c_submodules(alg: &FiniteAlgebra) -> Result<Vec<Submodule>> {
    let mut out = Vec::new();
    for lambda in type_c_ideals(alg)? {
        let subs = lambda.subspaces();
        let hits = alg.config().execution.map(&subs, |s| {
            (generated_ideal(alg, s) == lambda
                && s.hyperplanes()
                    .iter()
                    .all(|b| !is_type_c_ideal(alg, &generated_ideal(alg, b))))
            .then(|| s.clone())
        });
        out.extend(hits.into_iter().flatten());
    }
    out.sort();
    Ok(out)
}

/// Every submodule of type D.
pub fn type_d_submodules(alg: &FiniteAlgebra) -> Result<Vec<Submodule>> {
    let cs = type_c_submodules(alg)?;
    let keep = alg
        .config()
        .execution
        .map(&cs, |a| type_d_condition(alg, a, alg.rank()));
    Ok(cs.into_iter().zip(keep).filter_map(|(a, k)| k.then_some(a)).collect())
}

/// Components of `y = a0 e + a_1 + ... + a_n + r` in
/// `R e (+) A (+) ... (+) A^n (+) A̲^(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha0: u64,
    /// `alpha_1 .. alpha_n`.
    pub parts: Vec<Vec<u64>>,
    /// The component in `A̲^(n+1)`.
    pub remainder: Vec<u64>,
}

impl Decomposition {
    pub fn reconstruct(&self, alg: &FiniteAlgebra) -> Vec<u64> {
        let mut y = alg.scalar_mul(self.alpha0, alg.identity());
        for part in self.parts.iter().chain([&self.remainder]) {
            y = alg.add(&y, part);
        }
        y
    }
}

pub fn decompose(alg: &FiniteAlgebra, y: &[u64], a: &Submodule, n: usize) -> Result<Decomposition> {
    let mut blocks: Vec<Submodule> = (0..=n).map(|k| power_submodule(alg, a, k)).collect();
    blocks.push(ideal_power(alg, a, n + 1));
    let total: usize = blocks.iter().map(Submodule::rank).sum();
    let gens: Vec<Vec<u64>> = blocks.iter().flat_map(|b| b.basis().to_vec()).collect();
    if total != alg.rank() || !alg.span(gens.clone()).is_full() {
        return Err(Error::NotDirect { level: n });
    }
    let coeffs = solve(&gens, y, alg.prime()).expect("blocks span the algebra");
    let mut offset = 0;
    let mut comps = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let mut v = alg.zero_element();
        for (c, row) in coeffs[offset..offset + b.rank()].iter().zip(b.basis()) {
            v = alg.add(&v, &alg.scalar_mul(*c, row));
        }
        offset += b.rank();
        comps.push(v);
    }
    let remainder = comps.pop().expect("at least one block");
    let e_part = comps.remove(0);
    // The scalar block is span{e}; read off the coefficient.
    let alpha0 = solve(&[alg.identity().to_vec()], &e_part, alg.prime()).expect("in R e")[0];
    Ok(Decomposition {
        alpha0,
        parts: comps,
        remainder,
    })
}

/// `A ≈ B`: same generated ideal.
pub fn equivalent(alg: &FiniteAlgebra, a: &Submodule, b: &Submodule) -> bool {
    generated_ideal(alg, a) == generated_ideal(alg, b)
}

/// `A ≈ pi_A̲(B)` and `B ≈ pi_B̲(A)`.
pub fn strongly_compatible(alg: &FiniteAlgebra, a: &Submodule, b: &Submodule) -> bool {
    let ia = generated_ideal(alg, a);
    let ib = generated_ideal(alg, b);
    if !is_type_c_ideal(alg, &ia) || !is_type_c_ideal(alg, &ib) {
        return false;
    }
    generated_ideal(alg, &project_submodule(alg, &ia, b)) == ia
        && generated_ideal(alg, &project_submodule(alg, &ib, a)) == ib
}

/// Adjacency lists of strong compatibility over `universe` (no self loops).
pub fn compatibility_graph(alg: &FiniteAlgebra, universe: &[Submodule]) -> Vec<Vec<usize>> {
    let n = universe.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let edges = alg
        .config()
        .execution
        .map(&pairs, |&(i, j)| strongly_compatible(alg, &universe[i], &universe[j]));
    let mut adj = vec![Vec::new(); n];
    for (&(i, j), e) in pairs.iter().zip(edges) {
        if e {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    adj
}

/// Connected components of the strong-compatibility graph.
pub fn compatibility_classes(alg: &FiniteAlgebra, universe: &[Submodule]) -> Vec<usize> {
    let adj = compatibility_graph(alg, universe);
    let mut class = vec![usize::MAX; universe.len()];
    let mut next = 0;
    for start in 0..universe.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        class[start] = next;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if class[w] == usize::MAX {
                    class[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    class
}

/// A chain of strong compatibilities from `a` to `b` through `universe`.
pub fn compatible(alg: &FiniteAlgebra, a: &Submodule, b: &Submodule, universe: &[Submodule]) -> bool {
    let mut nodes: Vec<Submodule> = universe.to_vec();
    for s in [a, b] {
        if !nodes.contains(s) {
            nodes.push(s.clone());
        }
    }
    let class = compatibility_classes(alg, &nodes);
    let ia = nodes.iter().position(|s| s == a).unwrap();
    let ib = nodes.iter().position(|s| s == b).unwrap();
    a == b || class[ia] == class[ib]
}

/// Stabilised descending powers `L ⊇ L^2 ⊇ ...` of an ideal: the limit and
/// the first index where it is reached.
pub fn stable_power(alg: &FiniteAlgebra, lambda: &Submodule) -> (Submodule, usize) {
    let mut k = 1;
    let mut cur = lambda.clone();
    loop {
        let next = product(alg, &cur, lambda);
        if next == cur {
            return (cur, k);
        }
        cur = next;
        k += 1;
    }
}
