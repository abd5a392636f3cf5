//! Constructors for the named group families.
//!
//! Every nonabelian family here is an extension of an abelian group `N` by a
//! cyclic group `<x>` of order `k`, with `x^-1 v x = alpha(v)` and
//! `x^k = n0` in `N`. Elements are pairs `(i, v)` standing for `x^i v`, so
//!
//! ```text
//! (i, v)(j, w) = ((i + j) mod k, alpha^j(v) + w + [i + j >= k] n0)
//! ```
//!
//! Presentations are only used to validate the result.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{validation, Error, Result};
use crate::group::arith::{gcd, is_prime, pow_mod, prime_power};
use crate::group::iso::are_isomorphic;
use crate::group::lattice::cyclic_subgroups;
use crate::group::{ops, GroupTable, SubgroupSet};

/// Base factor of a generalized extraspecial product `E x C_p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtraspecialBase {
    Dihedral,
    Quaternion,
    ExponentP,
    ExponentP2,
}

/// A named family member. Serializes as `{"name": ..., "params": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum CatalogSpec {
    Cyclic { n: u64 },
    AbelianType { moduli: Vec<u64> },
    ElementaryAbelian { p: u64, rank: u32 },
    /// Dihedral group of order `2^n`.
    Dihedral { n: u32 },
    /// Semidihedral group of order `2^n`, `n >= 4`.
    Semidihedral { n: u32 },
    /// Generalized quaternion group of order `2^n`, `n >= 3`.
    GeneralizedQuaternion { n: u32 },
    ExtraspecialP3ExpP { p: u64 },
    ExtraspecialP3ExpP2 { p: u64 },
    GeneralizedExtraspecialProduct { base: ExtraspecialBase, p: u64, rank: u32 },
    /// `<a, b | a^(p^m), b^(p^n), a^b = a^t>`.
    Metacyclic { p: u64, m: u32, n: u32, t: u64 },
    #[serde(rename = "C_pr")]
    Cpr { p: u64, r: u32 },
    #[serde(rename = "G_pr_eps")]
    Gpre { p: u64, r: u32, eps: u32 },
    Gamma {},
    DirectProduct { factors: Vec<CatalogSpec> },
    /// `Z_moduli` extended by a cyclic group of order `k` whose generator
    /// acts by `action[j]` = image of the `j`-th basis vector.
    SemidirectProduct { moduli: Vec<u64>, k: u64, action: Vec<Vec<i64>> },
}

/// Abelian-by-cyclic data; see the module docs.
struct Extension {
    k: u64,
    moduli: Vec<u64>,
    /// `alpha[j]` is the image of basis vector `j`.
    alpha: Vec<Vec<i64>>,
    n0: Vec<i64>,
}

type Elem = Vec<u32>;

impl Extension {
    fn apply(&self, v: &[u32]) -> Vec<u32> {
        let d = self.moduli.len();
        let mut out = vec![0i64; d];
        for (j, &c) in v.iter().enumerate() {
            for i in 0..d {
                out[i] += c as i64 * self.alpha[j][i];
            }
        }
        out.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u32)
            .collect()
    }

    fn reduce(&self, v: &[i64]) -> Vec<u32> {
        v.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u32)
            .collect()
    }

    fn n_size(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn all_n(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m as u32).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn check(&self, caps: &Caps) -> Result<()> {
        let d = self.moduli.len();
        if self.k == 0 || self.moduli.contains(&0) {
            return validation("moduli and cyclic order must be positive");
        }
        if self.alpha.len() != d || self.alpha.iter().any(|r| r.len() != d) || self.n0.len() != d {
            return validation("action matrix has the wrong shape");
        }
        let order = self.k.saturating_mul(self.n_size());
        caps.check("group order", caps.table, order.min(usize::MAX as u64) as usize)?;
        // alpha is well defined: m_j * alpha(e_j) = 0
        for j in 0..d {
            let img: Vec<i64> = self.alpha[j].iter().map(|&a| a * self.moduli[j] as i64).collect();
            if self.reduce(&img).iter().any(|&c| c != 0) {
                return validation(format!("action does not respect the order of basis vector {j}"));
            }
        }
        let all = self.all_n();
        let mut seen = std::collections::HashSet::new();
        for v in &all {
            if !seen.insert(self.apply(v)) {
                return validation("action is not a bijection");
            }
            let mut w = v.clone();
            for _ in 0..self.k {
                w = self.apply(&w);
            }
            if &w != v {
                return validation("action does not have order dividing the cyclic order");
            }
        }
        let n0 = self.reduce(&self.n0);
        if self.apply(&n0) != n0 {
            return validation("power of the cyclic generator is not fixed by the action");
        }
        Ok(())
    }

    /// Builds the table; `named` picks the designated generators as
    /// elements, with the top generator `(1, 0)` available as `top()`.
    fn build(&self, named: &[Elem], caps: &Caps) -> Result<GroupTable> {
        self.check(caps)?;
        let d = self.moduli.len();
        let k = self.k as u32;
        // alpha^j for j < k
        let mut powers: Vec<Vec<Vec<u32>>> = Vec::with_capacity(self.k as usize);
        let basis: Vec<Vec<u32>> = (0..d)
            .map(|j| (0..d).map(|i| u32::from(i == j) % self.moduli[i] as u32).collect())
            .collect();
        let mut cur = basis.clone();
        for _ in 0..self.k {
            powers.push(cur.clone());
            cur = cur.iter().map(|v| self.apply(v)).collect();
        }
        let n0 = self.reduce(&self.n0);
        let moduli = self.moduli.clone();
        let mul = |x: &Elem, y: &Elem| -> Elem {
            let (i, j) = (x[0], y[0]);
            let pw = &powers[j as usize];
            let mut out = vec![0u64; d];
            for (jj, &c) in x[1..].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for ii in 0..d {
                    out[ii] += c as u64 * pw[jj][ii] as u64;
                }
            }
            for ii in 0..d {
                out[ii] += y[1 + ii] as u64;
                if i + j >= k {
                    out[ii] += n0[ii] as u64;
                }
            }
            let mut e = Vec::with_capacity(d + 1);
            e.push((i + j) % k);
            e.extend(out.iter().zip(&moduli).map(|(&v, &m)| (v % m) as u32));
            e
        };
        let identity: Elem = vec![0; d + 1];
        let (table, elems) = GroupTable::from_generators(identity, named, mul, caps)?;
        let expected = (self.k * self.n_size()) as usize;
        if table.order() != expected {
            return validation(format!(
                "designated generators produce order {} instead of {expected}",
                table.order()
            ));
        }
        let labels = elems
            .iter()
            .map(|e| {
                let v: Vec<String> = e[1..].iter().map(|c| c.to_string()).collect();
                format!("({};{})", e[0], v.join(","))
            })
            .collect();
        Ok(table.with_labels(labels))
    }

    fn top(&self) -> Elem {
        let mut e = vec![0; self.moduli.len() + 1];
        e[0] = 1 % self.k as u32;
        e
    }

    fn basis(&self, j: usize) -> Elem {
        let mut e = vec![0; self.moduli.len() + 1];
        e[1 + j] = 1 % self.moduli[j] as u32;
        e
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        validation(format!("{p} is not prime"))
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).filter(|&v| v <= u32::MAX as u64).ok_or(Error::SizeLimit {
        what: "group order",
        limit: u32::MAX as usize,
        actual: usize::MAX,
    })
}

pub fn abelian(moduli: &[u64], caps: &Caps) -> Result<GroupTable> {
    if moduli.is_empty() {
        return Ok(GroupTable::trivial());
    }
    let d = moduli.len();
    let ext = Extension {
        k: 1,
        moduli: moduli.to_vec(),
        alpha: (0..d).map(|j| (0..d).map(|i| i64::from(i == j)).collect()).collect(),
        n0: vec![0; d],
    };
    let gens: Vec<Elem> = (0..d).map(|j| ext.basis(j)).collect();
    ext.build(&gens, caps)
}

pub fn cyclic(n: u64, caps: &Caps) -> Result<GroupTable> {
    if n == 0 {
        return validation("cyclic group order must be positive");
    }
    abelian(&[n], caps)
}

pub fn elementary_abelian(p: u64, rank: u32, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    abelian(&vec![p; rank as usize], caps)
}

/// Cyclic `<r>` of order `2^(n-1)` extended by `s` with `s^2 = r^z` and
/// `r^s = r^t`. Designated generators `(r, s)`.
fn two_power_family(n: u32, t: i64, z: i64, caps: &Caps) -> Result<GroupTable> {
    let m = checked_pow(2, n - 1)?;
    let ext = Extension { k: 2, moduli: vec![m], alpha: vec![vec![t]], n0: vec![z] };
    ext.build(&[ext.basis(0), ext.top()], caps)
}

/// Dihedral group of order `2^n`.
pub fn dihedral(n: u32, caps: &Caps) -> Result<GroupTable> {
    if n < 2 {
        return validation("dihedral family needs n >= 2");
    }
    two_power_family(n, -1, 0, caps)
}

/// Semidihedral group of order `2^n`.
pub fn semidihedral(n: u32, caps: &Caps) -> Result<GroupTable> {
    if n < 4 {
        return validation("semidihedral family needs n >= 4");
    }
    two_power_family(n, (1i64 << (n - 2)) - 1, 0, caps)
}

/// Generalized quaternion group of order `2^n`.
pub fn quaternion(n: u32, caps: &Caps) -> Result<GroupTable> {
    if n < 3 {
        return validation("quaternion family needs n >= 3");
    }
    two_power_family(n, -1, 1i64 << (n - 2), caps)
}

/// `Z4 x| Z4` with inversion; designated generators `(a, b)`, `a^b = a^-1`.
pub fn gamma(caps: &Caps) -> Result<GroupTable> {
    let ext = Extension { k: 4, moduli: vec![4], alpha: vec![vec![-1]], n0: vec![0] };
    ext.build(&[ext.basis(0), ext.top()], caps)
}

/// Extraspecial of order `p^3` and exponent `p`, `p` odd. Generators
/// `(a, b, c)` with `[a, b] = c` central.
pub fn extraspecial_exp_p(p: u64, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    if p == 2 {
        return validation("exponent-p extraspecial family needs p odd");
    }
    let ext = Extension { k: p, moduli: vec![p, p], alpha: vec![vec![1, -1], vec![0, 1]], n0: vec![0, 0] };
    ext.build(&[ext.top(), ext.basis(0), ext.basis(1)], caps)
}

/// Extraspecial of order `p^3` and exponent `p^2`, `p` odd:
/// `<a, b | a^(p^2), b^p, a^b = a^(1+p)>`.
pub fn extraspecial_exp_p2(p: u64, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    if p == 2 {
        return validation("exponent-p^2 extraspecial family needs p odd");
    }
    metacyclic(p, 2, 1, 1 + p, caps)
}

/// `<a, b | a^(p^m) = b^(p^n) = 1, a^b = a^t>`; designated generators `(a, b)`.
pub fn metacyclic(p: u64, m: u32, n: u32, t: u64, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    let pm = checked_pow(p, m)?;
    let pn = checked_pow(p, n)?;
    if gcd(t as usize, p as usize) != 1 || pow_mod(t, pn, pm) != 1 % pm {
        return validation(format!("t = {t} does not satisfy t^(p^n) = 1 mod p^m"));
    }
    let ext = Extension { k: pn, moduli: vec![pm], alpha: vec![vec![t as i64]], n0: vec![0] };
    ext.build(&[ext.basis(0), ext.top()], caps)
}

/// `C(p, r)`: generators `(a, b, c)` with `a^p = b^p = c^(p^(r-2)) = 1`,
/// `[a, b] = c^(p^(r-3))`, `c` central.
pub fn c_pr(p: u64, r: u32, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    if p < 3 || r < 3 {
        return validation("C(p, r) needs p >= 3 and r >= 3");
    }
    let pc = checked_pow(p, r - 2)?;
    let z = checked_pow(p, r - 3)? as i64;
    // [a, b] = -alpha(b) + b
    let ext = Extension { k: p, moduli: vec![p, pc], alpha: vec![vec![1, -z], vec![0, 1]], n0: vec![0, 0] };
    ext.build(&[ext.top(), ext.basis(0), ext.basis(1)], caps)
}

/// Twisting exponent of `G(p, r, eps)`, the literal `p^(eps r - 3)` reduced
/// modulo the order of `c`.
pub fn g_pr_twist(p: u64, r: u32, eps: u32) -> Result<u64> {
    let e = (eps as i64) * (r as i64) - 3;
    if e < 0 {
        return validation("exponent eps*r - 3 is negative");
    }
    let pc = checked_pow(p, r - 2)?;
    Ok(pow_mod(p, e as u64, pc))
}

/// `G(p, r, eps)`: generators `(a, b, c)` with `a^p = b^p = c^(p^(r-2)) = 1`,
/// `[b, c] = 1`, `[a, b^-1] = c^(p^(eps r - 3))`, `[a, c] = b`.
pub fn g_pr(p: u64, r: u32, eps: u32, caps: &Caps) -> Result<GroupTable> {
    require_prime(p)?;
    if p < 3 || r < 3 || eps == 0 {
        return validation("G(p, r, eps) needs p >= 3, r >= 3, eps >= 1");
    }
    let pc = checked_pow(p, r - 2)?;
    let e = g_pr_twist(p, r, eps)? as i64;
    // [a, b^-1] = alpha(b) - b, [a, c] = c - alpha(c)
    let ext = Extension { k: p, moduli: vec![p, pc], alpha: vec![vec![1, e], vec![-1, 1]], n0: vec![0, 0] };
    ext.build(&[ext.top(), ext.basis(0), ext.basis(1)], caps)
}

pub fn extraspecial_base(base: ExtraspecialBase, p: u64, caps: &Caps) -> Result<GroupTable> {
    match base {
        ExtraspecialBase::Dihedral | ExtraspecialBase::Quaternion if p != 2 => {
            validation("dihedral and quaternion bases need p = 2")
        }
        ExtraspecialBase::Dihedral => dihedral(3, caps),
        ExtraspecialBase::Quaternion => quaternion(3, caps),
        ExtraspecialBase::ExponentP => extraspecial_exp_p(p, caps),
        ExtraspecialBase::ExponentP2 => extraspecial_exp_p2(p, caps),
    }
}

/// `E x C_p^rank` with `E` extraspecial of order `p^3`.
pub fn generalized_extraspecial_product(base: ExtraspecialBase, p: u64, rank: u32, caps: &Caps) -> Result<GroupTable> {
    let e = extraspecial_base(base, p, caps)?;
    if rank == 0 {
        return Ok(e);
    }
    let a = elementary_abelian(p, rank, caps)?;
    GroupTable::direct_product(&e, &a, caps)
}

pub fn semidirect_product(moduli: &[u64], k: u64, action: &[Vec<i64>], caps: &Caps) -> Result<GroupTable> {
    let d = moduli.len();
    let ext = Extension { k, moduli: moduli.to_vec(), alpha: action.to_vec(), n0: vec![0; d] };
    let mut gens: Vec<Elem> = (0..d).map(|j| ext.basis(j)).collect();
    gens.push(ext.top());
    ext.build(&gens, caps)
}

/// Builds a family member.
pub fn build(spec: &CatalogSpec, caps: &Caps) -> Result<GroupTable> {
    use CatalogSpec::*;
    match spec {
        Cyclic { n } => cyclic(*n, caps),
        AbelianType { moduli } => abelian(moduli, caps),
        ElementaryAbelian { p, rank } => elementary_abelian(*p, *rank, caps),
        Dihedral { n } => dihedral(*n, caps),
        Semidihedral { n } => semidihedral(*n, caps),
        GeneralizedQuaternion { n } => quaternion(*n, caps),
        ExtraspecialP3ExpP { p } => extraspecial_exp_p(*p, caps),
        ExtraspecialP3ExpP2 { p } => extraspecial_exp_p2(*p, caps),
        GeneralizedExtraspecialProduct { base, p, rank } => generalized_extraspecial_product(*base, *p, *rank, caps),
        Metacyclic { p, m, n, t } => metacyclic(*p, *m, *n, *t, caps),
        Cpr { p, r } => c_pr(*p, *r, caps),
        Gpre { p, r, eps } => g_pr(*p, *r, *eps, caps),
        Gamma {} => gamma(caps),
        DirectProduct { factors } => {
            let mut acc = GroupTable::trivial();
            for f in factors {
                let t = build(f, caps)?;
                acc = GroupTable::direct_product(&acc, &t, caps)?;
            }
            Ok(acc)
        }
        SemidirectProduct { moduli, k, action } => semidirect_product(moduli, *k, action, caps),
    }
}

/// Order predicted by the parameters.
pub fn expected_order(spec: &CatalogSpec) -> Option<u64> {
    use CatalogSpec::*;
    Some(match spec {
        Cyclic { n } => *n,
        AbelianType { moduli } => moduli.iter().product(),
        ElementaryAbelian { p, rank } => p.checked_pow(*rank)?,
        Dihedral { n } | Semidihedral { n } | GeneralizedQuaternion { n } => 1u64.checked_shl(*n)?,
        ExtraspecialP3ExpP { p } | ExtraspecialP3ExpP2 { p } => p.pow(3),
        GeneralizedExtraspecialProduct { p, rank, .. } => p.checked_pow(3 + rank)?,
        Metacyclic { p, m, n, .. } => p.checked_pow(m + n)?,
        Cpr { p, r } | Gpre { p, r, .. } => p.checked_pow(*r)?,
        Gamma {} => 16,
        DirectProduct { factors } => factors.iter().map(expected_order).product::<Option<u64>>()?,
        SemidirectProduct { moduli, k, .. } => moduli.iter().product::<u64>() * k,
    })
}

fn generator_count(spec: &CatalogSpec) -> usize {
    use CatalogSpec::*;
    match spec {
        Cyclic { .. } => 1,
        AbelianType { moduli } => moduli.len(),
        ElementaryAbelian { rank, .. } => *rank as usize,
        Dihedral { .. } | Semidihedral { .. } | GeneralizedQuaternion { .. } | Gamma {} => 2,
        ExtraspecialP3ExpP { .. } | Cpr { .. } | Gpre { .. } => 3,
        ExtraspecialP3ExpP2 { .. } | Metacyclic { .. } => 2,
        GeneralizedExtraspecialProduct { base, rank, .. } => {
            let e = if *base == ExtraspecialBase::ExponentP { 3 } else { 2 };
            e + *rank as usize
        }
        DirectProduct { factors } => factors.iter().map(generator_count).sum(),
        SemidirectProduct { moduli, .. } => moduli.len() + 1,
    }
}

/// Whether the elements `gens` of `g` satisfy the defining relations of the
/// family (but not necessarily generation).
fn relations_hold(g: &GroupTable, spec: &CatalogSpec, gens: &[usize]) -> bool {
    use CatalogSpec::*;
    if gens.len() != generator_count(spec) {
        return false;
    }
    let pw = |x: usize, e: u64| g.pow(x, (e % g.element_order(x) as u64) as i64);
    let ord_div = |x: usize, m: u64| m.is_multiple_of(g.element_order(x) as u64);
    let commute = |x: usize, y: usize| g.mul(x, y) == g.mul(y, x);
    let abelian_rel = |moduli: &[u64]| {
        let basis = &gens[..moduli.len()];
        basis.iter().zip(moduli).all(|(&x, &m)| ord_div(x, m))
            && basis.iter().all(|&x| basis.iter().all(|&y| commute(x, y)))
    };
    match spec {
        Cyclic { n } => abelian_rel(&[*n]),
        AbelianType { moduli } => abelian_rel(moduli),
        ElementaryAbelian { p, rank } => abelian_rel(&vec![*p; *rank as usize]),
        Dihedral { n } | Semidihedral { n } | GeneralizedQuaternion { n } => {
            let (r, s) = (gens[0], gens[1]);
            let m = 1u64 << (n - 1);
            let (t, z) = match spec {
                Dihedral { .. } => (m - 1, 0),
                Semidihedral { .. } => (m / 2 - 1, 0),
                _ => (m - 1, m / 2),
            };
            ord_div(r, m) && g.mul(s, s) == pw(r, z) && g.conj(r, s) == pw(r, t)
        }
        Gamma {} => {
            let (a, b) = (gens[0], gens[1]);
            ord_div(a, 4) && ord_div(b, 4) && g.conj(a, b) == g.inv(a)
        }
        ExtraspecialP3ExpP { p } => {
            let (a, b, c) = (gens[0], gens[1], gens[2]);
            [a, b, c].iter().all(|&x| ord_div(x, *p))
                && g.commutator(a, b) == c
                && commute(a, c)
                && commute(b, c)
        }
        ExtraspecialP3ExpP2 { p } => relations_hold(g, &Metacyclic { p: *p, m: 2, n: 1, t: 1 + p }, gens),
        Metacyclic { p, m, n, t } => {
            let (a, b) = (gens[0], gens[1]);
            ord_div(a, p.pow(*m)) && ord_div(b, p.pow(*n)) && g.conj(a, b) == pw(a, *t)
        }
        Cpr { p, r } => {
            let (a, b, c) = (gens[0], gens[1], gens[2]);
            ord_div(a, *p)
                && ord_div(b, *p)
                && ord_div(c, p.pow(r - 2))
                && g.commutator(a, b) == pw(c, p.pow(r - 3))
                && commute(a, c)
                && commute(b, c)
        }
        Gpre { p, r, eps } => {
            let (a, b, c) = (gens[0], gens[1], gens[2]);
            let Ok(e) = g_pr_twist(*p, *r, *eps) else { return false };
            ord_div(a, *p)
                && ord_div(b, *p)
                && ord_div(c, p.pow(r - 2))
                && commute(b, c)
                && g.commutator(a, g.inv(b)) == pw(c, e)
                && g.commutator(a, c) == b
        }
        GeneralizedExtraspecialProduct { base, p, rank } => {
            let e = match base {
                ExtraspecialBase::Dihedral => Dihedral { n: 3 },
                ExtraspecialBase::Quaternion => GeneralizedQuaternion { n: 3 },
                ExtraspecialBase::ExponentP => ExtraspecialP3ExpP { p: *p },
                ExtraspecialBase::ExponentP2 => ExtraspecialP3ExpP2 { p: *p },
            };
            let ne = generator_count(&e);
            let a = ElementaryAbelian { p: *p, rank: *rank };
            relations_hold(g, &e, &gens[..ne])
                && relations_hold(g, &a, &gens[ne..])
                && gens[..ne].iter().all(|&x| gens[ne..].iter().all(|&y| commute(x, y)))
        }
        DirectProduct { factors } => {
            let mut start = 0;
            let mut ranges = Vec::new();
            for f in factors {
                let c = generator_count(f);
                if !relations_hold(g, f, &gens[start..start + c]) {
                    return false;
                }
                ranges.push(start..start + c);
                start += c;
            }
            ranges.iter().enumerate().all(|(i, ri)| {
                ranges[i + 1..]
                    .iter()
                    .all(|rj| gens[ri.clone()].iter().all(|&x| gens[rj.clone()].iter().all(|&y| commute(x, y))))
            })
        }
        SemidirectProduct { moduli, k, action } => {
            let d = moduli.len();
            let (basis, top) = (&gens[..d], gens[d]);
            abelian_rel(moduli)
                && ord_div(top, *k)
                && (0..d).all(|j| {
                    let img = action[j]
                        .iter()
                        .zip(basis)
                        .fold(0, |acc, (&c, &x)| g.mul(acc, g.pow(x, c)));
                    g.conj(basis[j], top) == img
                })
        }
    }
}

/// True iff the designated generators of `g` satisfy every relation of the
/// family presentation, generate `g`, and `|g|` is the family order.
pub fn validate_presentation(g: &GroupTable, spec: &CatalogSpec) -> bool {
    let Some(order) = expected_order(spec) else { return false };
    if g.order() as u64 != order {
        return false;
    }
    let gens = g.generators();
    relations_hold(g, spec, gens) && ops::generated(g, gens).order() == g.order()
}

fn require_p_group(p: &GroupTable) -> Result<usize> {
    match prime_power(p.order()) {
        Some((q, _)) => Ok(q),
        None => Err(Error::Domain(format!("order {} is not a prime power", p.order()))),
    }
}

/// `Phi(P) = P'` of order `p`.
pub fn is_generalized_extraspecial(p: &GroupTable) -> Result<bool> {
    let q = require_p_group(p)?;
    let w = SubgroupSet::whole(p);
    let d = ops::derived_subgroup(p, &w);
    Ok(d.order() == q && ops::frattini_p_group(p, &w, q) == d)
}

/// Some cyclic normal subgroup has cyclic quotient.
pub fn is_metacyclic(p: &GroupTable) -> Result<bool> {
    require_p_group(p)?;
    let w = SubgroupSet::whole(p);
    for n in cyclic_subgroups(p, &w) {
        if !ops::is_normal_in(p, &n, &w) {
            continue;
        }
        let index = p.order() / n.order();
        // P/N is cyclic iff some coset has order |P:N|
        let cyclic_quotient = (0..p.order()).any(|y| {
            let mut k = 1;
            let mut z = y;
            while !n.contains(z) {
                z = p.mul(z, y);
                k += 1;
            }
            k == index
        });
        if cyclic_quotient {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Clause of the strong-resistance theorem a p-group falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResistanceClause {
    /// Generalized extraspecial.
    GeneralizedExtraspecial,
    /// Metacyclic, `p` odd.
    MetacyclicOdd,
    /// Metacyclic, `p = 2`.
    MetacyclicTwo,
    /// Isomorphic to `C(p, r)`, `p >= 3`, `r >= 4`.
    RankTwoC,
    /// Isomorphic to `G(p, r, eps)`, `p >= 5`, `r >= 4`.
    RankTwoG,
    /// Abelian (resistance of abelian groups is classical).
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseMatch {
    pub clause: ResistanceClause,
    /// Name of the excluded form when the group is one of the exceptions.
    pub excluded_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResistanceClass {
    pub matches: Vec<ClauseMatch>,
    /// Some clause applies without being an excluded form.
    pub predicted_normal: bool,
}

impl ResistanceClass {
    /// The first matching clause, excluded or not.
    pub fn primary(&self) -> Option<&ClauseMatch> {
        self.matches.first()
    }

    pub fn is_excluded(&self) -> bool {
        !self.matches.is_empty() && !self.predicted_normal
    }
}

/// Classifies a p-group against the clauses of the strong-resistance
/// theorem, detecting the excluded forms by isomorphism.
pub fn resistance_class_of(p: &GroupTable, caps: &Caps) -> Result<ResistanceClass> {
    let mut matches = Vec::new();
    if p.order() == 1 {
        matches.push(ClauseMatch { clause: ResistanceClause::Abelian, excluded_form: None });
        return Ok(ResistanceClass { matches, predicted_normal: true });
    }
    let q = require_p_group(p)?;
    let (_, n) = prime_power(p.order()).unwrap();
    if is_generalized_extraspecial(p)? {
        let mut excluded = None;
        if n >= 3 {
            let base = if q == 2 { ExtraspecialBase::Dihedral } else { ExtraspecialBase::ExponentP };
            let form = generalized_extraspecial_product(base, q as u64, n - 3, caps)?;
            if are_isomorphic(p, &form) {
                let name = if q == 2 { "D8" } else { "extraspecial of exponent p" };
                excluded = Some(if n == 3 { name.to_string() } else { format!("{name} x C{q}^{}", n - 3) });
            }
        }
        matches.push(ClauseMatch { clause: ResistanceClause::GeneralizedExtraspecial, excluded_form: excluded });
    }
    if is_metacyclic(p)? {
        if q > 2 {
            matches.push(ClauseMatch { clause: ResistanceClause::MetacyclicOdd, excluded_form: None });
        } else {
            let mut excluded = None;
            let candidates: [(&str, u32, fn(u32, &Caps) -> Result<GroupTable>); 3] =
                [("dihedral", 2, dihedral), ("semidihedral", 4, semidihedral), ("generalized quaternion", 3, quaternion)];
            for (name, min, ctor) in candidates {
                if n >= min && are_isomorphic(p, &ctor(n, caps)?) {
                    excluded = Some(name.to_string());
                    break;
                }
            }
            matches.push(ClauseMatch { clause: ResistanceClause::MetacyclicTwo, excluded_form: excluded });
        }
    }
    if q >= 3 && n >= 4 && are_isomorphic(p, &c_pr(q as u64, n, caps)?) {
        matches.push(ClauseMatch { clause: ResistanceClause::RankTwoC, excluded_form: None });
    }
    if q >= 5 && n >= 4 {
        if let Ok(t) = g_pr(q as u64, n, 1, caps) {
            if are_isomorphic(p, &t) {
                matches.push(ClauseMatch { clause: ResistanceClause::RankTwoG, excluded_form: None });
            }
        }
    }
    if p.is_abelian() {
        matches.push(ClauseMatch { clause: ResistanceClause::Abelian, excluded_form: None });
    }
    let predicted_normal = matches.iter().any(|m| m.excluded_form.is_none());
    Ok(ResistanceClass { matches, predicted_normal })
}
