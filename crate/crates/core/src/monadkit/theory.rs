use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest carrier the enumerating checks will walk.
pub const ENUM_LIMIT: usize = 1 << 17;

/// Finite monoid given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteMonoid {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

impl FiniteMonoid {
    pub fn new(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("monoid table must be square over the labels".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("monoid has no unit".into()))?;
        Ok(FiniteMonoid { name: name.into(), labels, table, unit })
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteMonoid::new(&format!("c{n}"), (0..n).map(|i| i.to_string()).collect(), table).unwrap()
    }

    /// `{e, a, b}` with `xy = x` for `x, y ∈ {a, b}`; not commutative.
    pub fn left_zero() -> Self {
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        FiniteMonoid::new("lz", vec!["e".into(), "a".into(), "b".into()], table).unwrap()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpSig {
    pub name: String,
    pub arity: usize,
}

/// Locally finite theories, each given by its free algebras on finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub enum Theory {
    /// `X ↦ X ⊔ {*}`.
    Pointed,
    /// Finite sup-lattices; free algebra = power set.
    SupLattice,
    /// Join-semilattices without bottom; free algebra = nonempty subsets.
    Semilattice,
    /// `ℤ/n`-modules; free algebra = `(ℤ/n)^X`.
    ModN(u64),
    /// `M`-sets; free algebra = `M × X`.
    MSet(FiniteMonoid),
}

impl From<Theory> for String {
    fn from(t: Theory) -> Self {
        t.name()
    }
}

impl Theory {
    pub fn builtins() -> Vec<Theory> {
        vec![Theory::Pointed, Theory::SupLattice, Theory::Semilattice, Theory::ModN(2), Theory::MSet(FiniteMonoid::cyclic(2))]
    }

    /// `pointed`, `supl`, `slat`, `mod<n>`, `mset-c<n>`, `mset-lz`.
    pub fn parse(s: &str) -> Result<Theory> {
        let s = s.trim().to_lowercase();
        match s.as_str() {
            "pointed" | "pointedset" => return Ok(Theory::Pointed),
            "supl" | "suplattice" => return Ok(Theory::SupLattice),
            "slat" | "semilattice" => return Ok(Theory::Semilattice),
            "mset-lz" => return Ok(Theory::MSet(FiniteMonoid::left_zero())),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("mod") {
            let n: u64 = n.parse().map_err(|_| Error::Parse(format!("bad modulus in {s}")))?;
            if n < 2 {
                return Err(Error::Invalid("ModN needs n ≥ 2".into()));
            }
            return Ok(Theory::ModN(n));
        }
        if let Some(n) = s.strip_prefix("mset-c") {
            let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad monoid order in {s}")))?;
            if n == 0 {
                return Err(Error::Invalid("cyclic monoid needs order ≥ 1".into()));
            }
            return Ok(Theory::MSet(FiniteMonoid::cyclic(n)));
        }
        Err(Error::Parse(format!("unknown theory {s}")))
    }

    pub fn name(&self) -> String {
        match self {
            Theory::Pointed => "pointed".into(),
            Theory::SupLattice => "supl".into(),
            Theory::Semilattice => "slat".into(),
            Theory::ModN(n) => format!("mod{n}"),
            Theory::MSet(m) => format!("mset-{}", m.name),
        }
    }

    pub fn ops(&self) -> Vec<OpSig> {
        let op = |name: &str, arity| OpSig { name: name.into(), arity };
        match self {
            Theory::Pointed => vec![op("base", 0)],
            Theory::SupLattice => vec![op("bot", 0), op("join", 2)],
            Theory::Semilattice => vec![op("join", 2)],
            Theory::ModN(_) => vec![op("zero", 0), op("add", 2)],
            Theory::MSet(m) => m.labels.iter().map(|l| op(&format!("act{l}"), 1)).collect(),
        }
    }

    /// `|free(n)|`, `None` when it does not fit.
    pub fn free_size(&self, n: usize) -> Option<usize> {
        match self {
            Theory::Pointed => Some(n + 1),
            Theory::SupLattice => 1usize.checked_shl(n as u32).filter(|_| n < usize::BITS as usize),
            Theory::Semilattice => 1usize.checked_shl(n as u32).filter(|_| n < usize::BITS as usize).map(|s| s - 1),
            Theory::ModN(m) => (*m as usize).checked_pow(n as u32),
            Theory::MSet(m) => m.size().checked_mul(n),
        }
    }

    pub fn eta(&self, n: usize, s: usize) -> usize {
        match self {
            Theory::Pointed => s,
            Theory::SupLattice => 1 << s,
            Theory::Semilattice => (1 << s) - 1,
            Theory::ModN(m) => (*m as usize).pow(s as u32),
            Theory::MSet(m) => m.unit * n + s,
        }
    }

    /// Operation `k` of `free(n)`.
    pub fn free_op(&self, n: usize, k: usize, args: &[usize]) -> usize {
        match self {
            Theory::Pointed => n,
            Theory::SupLattice => {
                if k == 0 {
                    0
                } else {
                    args[0] | args[1]
                }
            }
            Theory::Semilattice => ((args[0] + 1) | (args[1] + 1)) - 1,
            Theory::ModN(m) => {
                if k == 0 {
                    return 0;
                }
                let m = *m as usize;
                let (mut a, mut b, mut out, mut place) = (args[0], args[1], 0, 1);
                for _ in 0..n {
                    out += ((a % m + b % m) % m) * place;
                    a /= m;
                    b /= m;
                    place *= m;
                }
                out
            }
            Theory::MSet(mon) => mon.table[k][args[0] / n] * n + args[0] % n,
        }
    }

    /// Generator multiplicities of an element of `free(n)` (coefficients for `ModN`).
    fn support(&self, n: usize, u: usize) -> Vec<(usize, usize)> {
        match self {
            Theory::SupLattice => (0..n).filter(|&s| u >> s & 1 == 1).map(|s| (s, 1)).collect(),
            Theory::Semilattice => (0..n).filter(|&s| (u + 1) >> s & 1 == 1).map(|s| (s, 1)).collect(),
            Theory::ModN(m) => {
                let m = *m as usize;
                let mut u = u;
                let mut out = Vec::new();
                for s in 0..n {
                    if u % m != 0 {
                        out.push((s, u % m));
                    }
                    u /= m;
                }
                out
            }
            _ => unreachable!(),
        }
    }

    /// The unique homomorphism `free(n) → target` extending `f`, evaluated at `u`.
    pub fn lift(&self, n: usize, f: &dyn Fn(usize) -> usize, target: &dyn Algebra, u: usize) -> usize {
        match self {
            Theory::Pointed => {
                if u == n {
                    target.op(0, &[])
                } else {
                    f(u)
                }
            }
            Theory::SupLattice => self.support(n, u).into_iter().fold(target.op(0, &[]), |acc, (s, _)| target.op(1, &[acc, f(s)])),
            Theory::Semilattice => {
                let sup = self.support(n, u);
                let first = f(sup[0].0);
                sup[1..].iter().fold(first, |acc, &(s, _)| target.op(0, &[acc, f(s)]))
            }
            Theory::ModN(_) => {
                let mut acc = target.op(0, &[]);
                for (s, c) in self.support(n, u) {
                    let x = f(s);
                    for _ in 0..c {
                        acc = target.op(1, &[acc, x]);
                    }
                }
                acc
            }
            Theory::MSet(_) => target.op(u / n, &[f(u % n)]),
        }
    }

    pub fn show(&self, n: usize, u: usize, labels: &[String]) -> String {
        match self {
            Theory::Pointed => {
                if u == n {
                    "*".into()
                } else {
                    labels[u].clone()
                }
            }
            Theory::SupLattice | Theory::Semilattice => {
                let parts: Vec<&str> = self.support(n, u).into_iter().map(|(s, _)| labels[s].as_str()).collect();
                format!("{{{}}}", parts.join(","))
            }
            Theory::ModN(_) => {
                let parts: Vec<String> = self
                    .support(n, u)
                    .into_iter()
                    .map(|(s, c)| if c == 1 { labels[s].clone() } else { format!("{c}{}", labels[s]) })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
            Theory::MSet(m) => {
                let (a, s) = (u / n, u % n);
                if a == m.unit {
                    labels[s].clone()
                } else {
                    format!("{}.{}", m.labels[a], labels[s])
                }
            }
        }
    }

    /// First failing equation of the theory on `alg`, if any.
    pub fn axiom_violation(&self, alg: &dyn Algebra) -> Option<String> {
        let n = alg.size();
        let all3 = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
        let semilattice = |j: usize| -> Option<String> {
            for (a, b, c) in all3() {
                if alg.op(j, &[alg.op(j, &[a, b]), c]) != alg.op(j, &[a, alg.op(j, &[b, c])]) {
                    return Some(format!("join not associative at ({a},{b},{c})"));
                }
            }
            for a in 0..n {
                if alg.op(j, &[a, a]) != a {
                    return Some(format!("join not idempotent at {a}"));
                }
                for b in 0..n {
                    if alg.op(j, &[a, b]) != alg.op(j, &[b, a]) {
                        return Some(format!("join not commutative at ({a},{b})"));
                    }
                }
            }
            None
        };
        match self {
            Theory::Pointed => None,
            Theory::SupLattice => semilattice(1).or_else(|| {
                let bot = alg.op(0, &[]);
                (0..n).find(|&a| alg.op(1, &[bot, a]) != a).map(|a| format!("bottom not a unit at {a}"))
            }),
            Theory::Semilattice => semilattice(0),
            Theory::ModN(m) => {
                for (a, b, c) in all3() {
                    if alg.op(1, &[alg.op(1, &[a, b]), c]) != alg.op(1, &[a, alg.op(1, &[b, c])]) {
                        return Some(format!("add not associative at ({a},{b},{c})"));
                    }
                }
                let zero = alg.op(0, &[]);
                for a in 0..n {
                    if alg.op(1, &[zero, a]) != a {
                        return Some(format!("zero not a unit at {a}"));
                    }
                    for b in 0..n {
                        if alg.op(1, &[a, b]) != alg.op(1, &[b, a]) {
                            return Some(format!("add not commutative at ({a},{b})"));
                        }
                    }
                    let mut acc = zero;
                    for _ in 0..*m {
                        acc = alg.op(1, &[acc, a]);
                    }
                    if acc != zero {
                        return Some(format!("{m}·{a} ≠ 0"));
                    }
                }
                None
            }
            Theory::MSet(mon) => {
                for x in 0..n {
                    if alg.op(mon.unit, &[x]) != x {
                        return Some(format!("unit acts nontrivially on {x}"));
                    }
                    for a in 0..mon.size() {
                        for b in 0..mon.size() {
                            if alg.op(a, &[alg.op(b, &[x])]) != alg.op(mon.table[a][b], &[x]) {
                                return Some(format!("action not compatible at ({a},{b},{x})"));
                            }
                        }
                    }
                }
                None
            }
        }
    }
}

/// An algebra for a [`Theory`] on the carrier `0..size`.
pub trait Algebra {
    fn theory(&self) -> &Theory;
    fn size(&self) -> usize;
    fn op(&self, k: usize, args: &[usize]) -> usize;
    fn label(&self, x: usize) -> String;
}

/// `free(n)` computed from the theory's normal forms.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub theory: Theory,
    pub n: usize,
    pub size: usize,
    pub labels: Vec<String>,
}

impl FreeAlgebra {
    /// Generators are shown as `x0, x1, …`.
    pub fn new(theory: &Theory, n: usize) -> Result<Self> {
        Self::build(theory, n, Vec::new())
    }

    pub fn with_labels(theory: &Theory, labels: Vec<String>) -> Result<Self> {
        Self::build(theory, labels.len(), labels)
    }

    fn build(theory: &Theory, n: usize, labels: Vec<String>) -> Result<Self> {
        let size = theory
            .free_size(n)
            .ok_or_else(|| Error::Unsupported(format!("free {} algebra on {n} generators is too large", theory.name())))?;
        Ok(FreeAlgebra { theory: theory.clone(), n, size, labels })
    }

    pub fn eta(&self, s: usize) -> usize {
        self.theory.eta(self.n, s)
    }

    pub fn lift(&self, f: &dyn Fn(usize) -> usize, target: &dyn Algebra, u: usize) -> usize {
        self.theory.lift(self.n, f, target, u)
    }
}

impl Algebra for FreeAlgebra {
    fn theory(&self) -> &Theory {
        &self.theory
    }
    fn size(&self) -> usize {
        self.size
    }
    fn op(&self, k: usize, args: &[usize]) -> usize {
        self.theory.free_op(self.n, k, args)
    }
    fn label(&self, x: usize) -> String {
        if self.labels.is_empty() && self.n > 0 {
            let labels: Vec<String> = (0..self.n).map(|i| format!("x{i}")).collect();
            return self.theory.show(self.n, x, &labels);
        }
        self.theory.show(self.n, x, &self.labels)
    }
}

/// Algebra stored as operation tables; `tables[k]` is indexed by the argument tuple, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAlgebra {
    pub theory: Theory,
    pub carrier: Vec<String>,
    pub tables: Vec<Vec<usize>>,
}

fn tuple_index(args: &[usize], n: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

impl Algebra for FiniteAlgebra {
    fn theory(&self) -> &Theory {
        &self.theory
    }
    fn size(&self) -> usize {
        self.carrier.len()
    }
    fn op(&self, k: usize, args: &[usize]) -> usize {
        self.tables[k][tuple_index(args, self.carrier.len())]
    }
    fn label(&self, x: usize) -> String {
        self.carrier[x].clone()
    }
}

#[derive(Deserialize)]
struct AlgebraLiteral {
    theory: String,
    carrier: Vec<String>,
    ops: std::collections::BTreeMap<String, serde_json::Value>,
}

impl FiniteAlgebra {
    /// Tables of any algebra, checked against the theory's equations.
    pub fn tabulate(alg: &dyn Algebra) -> Result<Self> {
        let n = alg.size();
        let th = alg.theory().clone();
        let mut tables = Vec::new();
        for sig in th.ops() {
            let len = n.checked_pow(sig.arity as u32).filter(|&l| l <= ENUM_LIMIT * 4).ok_or_else(|| {
                Error::Unsupported(format!("operation table of {} on {n} elements is too large", sig.name))
            })?;
            let mut t = Vec::with_capacity(len);
            for idx in 0..len {
                let mut args = vec![0; sig.arity];
                let mut r = idx;
                for slot in args.iter_mut().rev() {
                    *slot = r % n.max(1);
                    r /= n.max(1);
                }
                t.push(alg.op(tables.len(), &args));
            }
            tables.push(t);
        }
        let carrier = (0..n).map(|x| alg.label(x)).collect();
        Ok(FiniteAlgebra { theory: th, carrier, tables })
    }

    pub fn new(theory: &Theory, carrier: Vec<String>, tables: Vec<Vec<usize>>) -> Result<Self> {
        let n = carrier.len();
        let ops = theory.ops();
        if tables.len() != ops.len() {
            return Err(Error::Invalid(format!("{} expects {} operation tables", theory.name(), ops.len())));
        }
        for (sig, t) in ops.iter().zip(&tables) {
            if t.len() != n.pow(sig.arity as u32) || t.iter().any(|&x| x >= n) {
                return Err(Error::Invalid(format!("table of {} has the wrong shape", sig.name)));
            }
        }
        if ops.iter().any(|o| o.arity == 0) && n == 0 {
            return Err(Error::Invalid("a theory with constants has no empty algebras".into()));
        }
        let alg = FiniteAlgebra { theory: theory.clone(), carrier, tables };
        if let Some(w) = theory.axiom_violation(&alg) {
            return Err(Error::Invalid(format!("not a {} algebra: {w}", theory.name())));
        }
        Ok(alg)
    }

    pub fn free(theory: &Theory, n: usize) -> Result<Self> {
        Self::tabulate(&FreeAlgebra::new(theory, n)?)
    }

    /// `ℤ/k` as a `ℤ/n`-module (`k | n`).
    pub fn cyclic_module(n: u64, k: usize) -> Result<Self> {
        if k == 0 || n as usize % k != 0 {
            return Err(Error::Invalid(format!("ℤ/{k} is not a ℤ/{n}-module")));
        }
        let add = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        Self::new(&Theory::ModN(n), (0..k).map(|i| i.to_string()).collect(), vec![vec![0], add])
    }

    /// Pointed set `{*, a₁, …, a_{n−1}}` with basepoint 0.
    pub fn pointed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("a pointed set is nonempty".into()));
        }
        let carrier = std::iter::once("*".to_string()).chain((1..n).map(|i| format!("a{i}"))).collect();
        Self::new(&Theory::Pointed, carrier, vec![vec![0]])
    }

    /// `{"theory": "...", "carrier": [...], "ops": {"name": table}}`; binary tables may be nested rows.
    pub fn from_json(s: &str) -> Result<Self> {
        let lit: AlgebraLiteral = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let theory = Theory::parse(&lit.theory)?;
        let mut tables = Vec::new();
        for sig in theory.ops() {
            let v = lit.ops.get(&sig.name).ok_or_else(|| Error::Parse(format!("missing table {}", sig.name)))?;
            let flat: Vec<usize> = match v {
                serde_json::Value::Number(x) => vec![x.as_u64().ok_or_else(|| Error::Parse("bad entry".into()))? as usize],
                serde_json::Value::Array(rows) => {
                    let mut out = Vec::new();
                    for r in rows {
                        match r {
                            serde_json::Value::Array(inner) => {
                                for x in inner {
                                    out.push(x.as_u64().ok_or_else(|| Error::Parse("bad entry".into()))? as usize)
                                }
                            }
                            x => out.push(x.as_u64().ok_or_else(|| Error::Parse("bad entry".into()))? as usize),
                        }
                    }
                    out
                }
                _ => return Err(Error::Parse(format!("table {} must be a number or an array", sig.name))),
            };
            tables.push(flat);
        }
        Self::new(&theory, lit.carrier, tables)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ops: serde_json::Map<String, serde_json::Value> =
            self.theory.ops().iter().zip(&self.tables).map(|(s, t)| (s.name.clone(), serde_json::json!(t))).collect();
        serde_json::json!({ "theory": self.theory.name(), "carrier": self.carrier, "ops": ops })
    }

    /// The structure map `a : free(carrier) → carrier`.
    pub fn action(&self, u: usize) -> usize {
        self.theory.lift(self.size(), &|x| x, self, u)
    }
}

/// Is `h : A → C` compatible with every operation?
pub fn is_homomorphism(a: &dyn Algebra, c: &dyn Algebra, h: &[usize]) -> Option<String> {
    let n = a.size();
    for (k, sig) in a.theory().ops().iter().enumerate() {
        let count = n.pow(sig.arity as u32);
        for idx in 0..count {
            let mut args = vec![0; sig.arity];
            let mut r = idx;
            for slot in args.iter_mut().rev() {
                *slot = r % n;
                r /= n;
            }
            let img: Vec<usize> = args.iter().map(|&x| h[x]).collect();
            if h[a.op(k, &args)] != c.op(k, &img) {
                return Some(format!("{} at {:?}", sig.name, args.iter().map(|&x| a.label(x)).collect::<Vec<_>>()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_sizes() {
        assert_eq!(Theory::SupLattice.free_size(3), Some(8));
        assert_eq!(Theory::Semilattice.free_size(3), Some(7));
        assert_eq!(Theory::ModN(6).free_size(2), Some(36));
        assert_eq!(Theory::Pointed.free_size(2), Some(3));
        assert_eq!(Theory::MSet(FiniteMonoid::left_zero()).free_size(2), Some(6));
    }

    #[test]
    fn free_algebras_satisfy_axioms() {
        for th in Theory::builtins().into_iter().chain([Theory::ModN(3), Theory::MSet(FiniteMonoid::left_zero())]) {
            for n in 0..=3 {
                let f = FreeAlgebra::new(&th, n).unwrap();
                assert_eq!(th.axiom_violation(&f), None, "{} {n}", th.name());
            }
        }
    }

    #[test]
    fn lift_extends_and_is_homomorphism() {
        for th in Theory::builtins() {
            let f = FiniteAlgebra::free(&th, 2).unwrap();
            let g = FreeAlgebra::new(&th, 3).unwrap();
            // x0 ↦ η(2), x1 ↦ η(0) into free(3)
            let map = [g.eta(2), g.eta(0)];
            let h: Vec<usize> = (0..f.size()).map(|u| th.lift(2, &|s| map[s], &g, u)).collect();
            assert_eq!(h[th.eta(2, 0)], map[0]);
            assert_eq!(h[th.eta(2, 1)], map[1]);
            assert_eq!(is_homomorphism(&f, &g, &h), None, "{}", th.name());
        }
    }

    #[test]
    fn modules_and_monoids() {
        assert!(FiniteAlgebra::cyclic_module(6, 4).is_err());
        let z3 = FiniteAlgebra::cyclic_module(6, 3).unwrap();
        assert_eq!(z3.action(Theory::ModN(6).eta(3, 1)), 1);
        assert!(!FiniteMonoid::left_zero().is_commutative());
        assert!(FiniteMonoid::cyclic(4).is_commutative());
        assert!(FiniteMonoid::new("x", vec!["a".into(), "b".into()], vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn json_literal() {
        let s = r#"{"theory":"pointed","carrier":["*","a","b"],"ops":{"base":0}}"#;
        let a = FiniteAlgebra::from_json(s).unwrap();
        assert_eq!(a.size(), 3);
        let back = FiniteAlgebra::from_json(&a.to_json().to_string()).unwrap();
        assert_eq!(a, back);
        let bad = r#"{"theory":"supl","carrier":["0","1"],"ops":{"bot":0,"join":[[0,0],[0,1]]}}"#;
        assert!(FiniteAlgebra::from_json(bad).is_err());
    }

    #[test]
    fn display() {
        let l: Vec<String> = vec!["a".into(), "b".into()];
        assert_eq!(Theory::SupLattice.show(2, 3, &l), "{a,b}");
        assert_eq!(Theory::ModN(3).show(2, 2 + 3, &l), "2a+b");
        assert_eq!(Theory::Pointed.show(2, 2, &l), "*");
    }
}
