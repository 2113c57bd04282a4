use serde::Serialize;

use super::theory::{FreeAlgebra, Theory, ENUM_LIMIT};
use crate::error::Result;

/// Monad data on finite sets `0..n`, derived from `η` and `lift` of the free algebras.
#[derive(Clone, Debug)]
pub struct Monad {
    pub theory: Theory,
}

impl Monad {
    pub fn new(theory: &Theory) -> Self {
        Monad { theory: theory.clone() }
    }

    pub fn t(&self, n: usize) -> Option<usize> {
        self.theory.free_size(n)
    }

    fn free(&self, n: usize) -> Result<FreeAlgebra> {
        FreeAlgebra::new(&self.theory, n)
    }

    pub fn eta(&self, n: usize, x: usize) -> usize {
        self.theory.eta(n, x)
    }

    /// `T(f)` for `f : X → Y` with `|Y| = m`.
    pub fn fmap(&self, f: &dyn Fn(usize) -> usize, x: usize, m: usize, u: usize) -> Result<usize> {
        let fy = self.free(m)?;
        Ok(self.theory.lift(x, &|s| fy.eta(f(s)), &fy, u))
    }

    /// `μ_X : T(T(X)) → T(X)`.
    pub fn mu(&self, n: usize, w: usize) -> Result<usize> {
        let fx = self.free(n)?;
        Ok(self.theory.lift(fx.size, &|s| s, &fx, w))
    }

    /// `σ_{X,Y}(x, v) = T(y ↦ (x, y))(v)`; pairs are indexed `x·|Y| + y`.
    pub fn sigma(&self, nx: usize, ny: usize, x: usize, v: usize) -> Result<usize> {
        self.fmap(&|y| x * ny + y, ny, nx * ny, v)
    }

    /// `σ'_{X,Y}(u, y) = T(x ↦ (x, y))(u)`.
    pub fn sigma_prime(&self, nx: usize, ny: usize, u: usize, y: usize) -> Result<usize> {
        self.fmap(&|x| x * ny + y, nx, nx * ny, u)
    }

    /// `d = μ ∘ T(σ) ∘ σ'`: extend over `u` first, then over `v`.
    pub fn d(&self, nx: usize, ny: usize, u: usize, v: usize) -> Result<usize> {
        let fxy = self.free(nx * ny)?;
        Ok(self.theory.lift(nx, &|x| self.theory.lift(ny, &|y| fxy.eta(x * ny + y), &fxy, v), &fxy, u))
    }

    /// `μ ∘ T(σ') ∘ σ`: extend over `v` first.
    pub fn d_alt(&self, nx: usize, ny: usize, u: usize, v: usize) -> Result<usize> {
        let fxy = self.free(nx * ny)?;
        Ok(self.theory.lift(ny, &|y| self.theory.lift(nx, &|x| fxy.eta(x * ny + y), &fxy, u), &fxy, v))
    }
}

/// Tables of `σ`, `σ'` and `d` for `X = 0..nx`, `Y = 0..ny`.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedMaps {
    pub theory: String,
    pub nx: usize,
    pub ny: usize,
    /// `sigma[x][v]`
    pub sigma: Vec<Vec<usize>>,
    /// `sigma_prime[u][y]`
    pub sigma_prime: Vec<Vec<usize>>,
    /// `d[u][v]`
    pub d: Vec<Vec<usize>>,
    pub alternate_agrees: bool,
}

impl DerivedMaps {
    pub fn show_d(&self, th: &Theory, u: usize, v: usize) -> String {
        let lx: Vec<String> = (0..self.nx).map(|i| format!("a{i}")).collect();
        let ly: Vec<String> = (0..self.ny).map(|i| format!("b{i}")).collect();
        let lxy: Vec<String> = (0..self.nx * self.ny).map(|p| format!("({},{})", lx[p / self.ny], ly[p % self.ny])).collect();
        format!(
            "d({}, {}) = {}",
            th.show(self.nx, u, &lx),
            th.show(self.ny, v, &ly),
            th.show(self.nx * self.ny, self.d[u][v], &lxy)
        )
    }
}

pub fn derived_strength_costrength_d(theory: &Theory, nx: usize, ny: usize) -> Result<DerivedMaps> {
    let m = Monad::new(theory);
    let tx = m.t(nx).unwrap_or(usize::MAX);
    let ty = m.t(ny).unwrap_or(usize::MAX);
    if tx.saturating_mul(ty) > ENUM_LIMIT {
        return Err(crate::error::Error::Unsupported("T(X) × T(Y) too large to tabulate".into()));
    }
    let sigma = (0..nx).map(|x| (0..ty).map(|v| m.sigma(nx, ny, x, v)).collect()).collect::<Result<_>>()?;
    let sigma_prime = (0..tx).map(|u| (0..ny).map(|y| m.sigma_prime(nx, ny, u, y)).collect()).collect::<Result<_>>()?;
    let mut d = Vec::new();
    let mut alternate_agrees = true;
    for u in 0..tx {
        let mut row = Vec::new();
        for v in 0..ty {
            let x = m.d(nx, ny, u, v)?;
            alternate_agrees &= x == m.d_alt(nx, ny, u, v)?;
            row.push(x);
        }
        d.push(row);
    }
    Ok(DerivedMaps { theory: theory.name(), nx, ny, sigma, sigma_prime, d, alternate_agrees })
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub sizes: Vec<usize>,
    /// Number of elements checked; `None` when the domain exceeded the enumeration limit.
    pub cases: Option<usize>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub theory: String,
    pub max_size: usize,
    pub checks: Vec<LawCheck>,
    pub passed: bool,
    pub skipped: usize,
}

impl LawReport {
    pub fn failures(&self) -> Vec<&LawCheck> {
        self.checks.iter().filter(|c| c.witness.is_some()).collect()
    }
}

fn fits(sizes: &[Option<usize>]) -> Option<usize> {
    sizes.iter().try_fold(1usize, |acc, s| s.and_then(|s| acc.checked_mul(s))).filter(|&p| p <= ENUM_LIMIT)
}

/// Unit and associativity of `μ`, the unit and multiplication squares of `d`, symmetry
/// `d ∘ S = T(S) ∘ d`, agreement of the two composites for `d`, and associativity of `d`,
/// on all sets of size `≤ max_size`.
pub fn check_monad_laws(theory: &Theory, max_size: usize) -> Result<LawReport> {
    let m = Monad::new(theory);
    let mut checks = Vec::new();
    let name = |s: &str| s.to_string();

    for n in 0..=max_size {
        let tx = m.t(n);
        let ttx = tx.and_then(|t| m.t(t));
        let tttx = ttx.and_then(|t| m.t(t));

        // μ ∘ η_T = id = μ ∘ T(η)
        let mut c = LawCheck { law: name("unit"), sizes: vec![n], cases: None, witness: None };
        if let (Some(t), Some(_)) = (tx.filter(|&t| t <= ENUM_LIMIT), ttx) {
            for u in 0..t {
                let a = m.mu(n, m.eta(t, u))?;
                let b = m.mu(n, m.fmap(&|x| m.eta(n, x), n, t, u)?)?;
                if a != u || b != u {
                    c.witness = Some(format!("u = {u}: μη = {a}, μT(η) = {b}"));
                    break;
                }
            }
            c.cases = Some(t);
        }
        checks.push(c);

        // μ ∘ μ_T = μ ∘ T(μ)
        let mut c = LawCheck { law: name("associativity"), sizes: vec![n], cases: None, witness: None };
        if let (Some(_), Some(t), Some(tt), Some(ttt)) = (fits(&[tttx]), tx, ttx, tttx) {
            for w in 0..ttt {
                let a = m.mu(n, m.mu(t, w)?)?;
                let b = m.mu(n, m.fmap(&|x| m.mu(n, x).unwrap(), tt, t, w)?)?;
                if a != b {
                    c.witness = Some(format!("w = {w}: {a} ≠ {b}"));
                    break;
                }
            }
            c.cases = Some(ttt);
        }
        checks.push(c);
    }

    for nx in 0..=max_size {
        for ny in 0..=max_size {
            let (tx, ty, txy) = (m.t(nx), m.t(ny), m.t(nx * ny));

            let mut c = LawCheck { law: name("d-unit"), sizes: vec![nx, ny], cases: Some(nx * ny), witness: None };
            'unit: for x in 0..nx {
                for y in 0..ny {
                    if m.d(nx, ny, m.eta(nx, x), m.eta(ny, y))? != m.eta(nx * ny, x * ny + y) {
                        c.witness = Some(format!("d(η{x}, η{y}) ≠ η({x},{y})"));
                        break 'unit;
                    }
                }
            }
            checks.push(c);

            let mut c = LawCheck { law: name("d-symmetry"), sizes: vec![nx, ny], cases: None, witness: None };
            let mut alt = LawCheck { law: name("d-composites-agree"), sizes: vec![nx, ny], cases: None, witness: None };
            if let (Some(cases), Some(tx), Some(ty)) = (fits(&[tx, ty]), tx, ty) {
                let swap = |p: usize| (p % ny) * nx + p / ny;
                for u in 0..tx {
                    for v in 0..ty {
                        let duv = m.d(nx, ny, u, v)?;
                        if c.witness.is_none() && m.d(ny, nx, v, u)? != m.fmap(&swap, nx * ny, nx * ny, duv)? {
                            c.witness = Some(format!("u = {u}, v = {v}"));
                        }
                        if alt.witness.is_none() && duv != m.d_alt(nx, ny, u, v)? {
                            alt.witness = Some(format!("u = {u}, v = {v}"));
                        }
                    }
                }
                c.cases = Some(cases);
                alt.cases = Some(cases);
            }
            checks.push(c);
            checks.push(alt);

            // d ∘ (μ × μ) = μ ∘ T(d) ∘ d
            let mut c = LawCheck { law: name("d-multiplication"), sizes: vec![nx, ny], cases: None, witness: None };
            let (ttx, tty) = (tx.and_then(|t| m.t(t)), ty.and_then(|t| m.t(t)));
            let ttxy = txy.and_then(|t| m.t(t));
            let inner = tx.zip(ty).and_then(|(a, b)| a.checked_mul(b));
            let tinner = inner.and_then(|i| m.t(i));
            if let (Some(cases), Some(_), Some(_), Some(tx), Some(ty), Some(txy), Some(inner)) =
                (fits(&[ttx, tty]), ttxy, tinner, tx, ty, txy, inner)
            {
                let mut dtab = Vec::with_capacity(inner);
                for u in 0..tx {
                    for v in 0..ty {
                        dtab.push(m.d(nx, ny, u, v)?);
                    }
                }
                'mult: for p in 0..ttx.unwrap() {
                    for q in 0..tty.unwrap() {
                        let lhs = m.d(nx, ny, m.mu(nx, p)?, m.mu(ny, q)?)?;
                        let outer = m.d(tx, ty, p, q)?;
                        let rhs = m.mu(nx * ny, m.fmap(&|s| dtab[s], inner, txy, outer)?)?;
                        if lhs != rhs {
                            c.witness = Some(format!("p = {p}, q = {q}"));
                            break 'mult;
                        }
                    }
                }
                c.cases = Some(cases);
            }
            checks.push(c);
        }
    }

    // T(assoc) ∘ d(d(u, v), w) = d(u, d(v, w))
    for nx in 1..=max_size {
        for ny in 1..=max_size {
            for nz in 1..=max_size {
                let (tx, ty, tz) = (m.t(nx), m.t(ny), m.t(nz));
                let mut c = LawCheck { law: name("d-associativity"), sizes: vec![nx, ny, nz], cases: None, witness: None };
                if let (Some(cases), Some(tx), Some(ty), Some(tz)) = (fits(&[tx, ty, tz]), tx, ty, tz) {
                    // ((x,y),z) sits at (x·ny + y)·nz + z and (x,(y,z)) at x·ny·nz + y·nz + z, so T(assoc) is the identity
                    'assoc: for u in 0..tx {
                        for v in 0..ty {
                            let uv = m.d(nx, ny, u, v)?;
                            for w in 0..tz {
                                let left = m.d(nx * ny, nz, uv, w)?;
                                let right = m.d(nx, ny * nz, u, m.d(ny, nz, v, w)?)?;
                                if left != right {
                                    c.witness = Some(format!("u = {u}, v = {v}, w = {w}"));
                                    break 'assoc;
                                }
                            }
                        }
                    }
                    c.cases = Some(cases);
                }
                checks.push(c);
            }
        }
    }

    let passed = checks.iter().all(|c| c.witness.is_none());
    let skipped = checks.iter().filter(|c| c.cases.is_none()).count();
    Ok(LawReport { theory: theory.name(), max_size, checks, passed, skipped })
}

#[cfg(test)]
mod tests {
    use super::super::theory::FiniteMonoid;
    use super::*;

    #[test]
    fn pointed_basepoint_absorbs() {
        let th = Theory::Pointed;
        let dm = derived_strength_costrength_d(&th, 2, 2).unwrap();
        for u in 0..3 {
            assert_eq!(dm.d[u][2], 4);
            assert_eq!(dm.d[2][u], 4);
        }
        assert!(dm.alternate_agrees);
    }

    #[test]
    fn suplattice_singletons() {
        let th = Theory::SupLattice;
        let dm = derived_strength_costrength_d(&th, 2, 3).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(dm.d[1 << a][1 << b], 1 << (a * 3 + b));
            }
        }
        assert_eq!(dm.show_d(&th, 3, 1), "d({a0,a1}, {b0}) = {(a0,b0),(a1,b0)}");
    }

    #[test]
    fn mod2_distributes_against_bilinear_oracle() {
        let th = Theory::ModN(2);
        let dm = derived_strength_costrength_d(&th, 2, 2).unwrap();
        // formal sums as coefficient vectors; oracle: coefficient of (a,b) is u_a·v_b
        for u in 0..4usize {
            for v in 0..4usize {
                let mut expect = 0;
                for a in 0..2 {
                    for b in 0..2 {
                        let c = ((u >> a) & 1) * ((v >> b) & 1);
                        expect += c << (a * 2 + b);
                    }
                }
                assert_eq!(dm.d[u][v], expect);
            }
        }
    }

    #[test]
    fn builtins_pass_at_two() {
        for th in Theory::builtins() {
            let r = check_monad_laws(&th, 2).unwrap();
            assert!(r.passed, "{}: {:?}", th.name(), r.failures());
            assert!(r.checks.iter().filter(|c| c.sizes.iter().all(|&s| s <= 2)).all(|c| c.cases.is_some()), "{}", th.name());
        }
    }

    #[test]
    fn noncommutative_monoid_breaks_symmetry() {
        let th = Theory::MSet(FiniteMonoid::left_zero());
        let r = check_monad_laws(&th, 1).unwrap();
        assert!(!r.passed);
        let laws: Vec<&str> = r.failures().iter().map(|c| c.law.as_str()).collect();
        assert!(laws.contains(&"d-symmetry"));
        assert!(laws.contains(&"d-composites-agree"));
        assert!(!laws.contains(&"unit") && !laws.contains(&"associativity"));
    }
}
