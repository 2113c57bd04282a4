use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category. Morphism `i < objects.len()` is the identity of object `i`.
#[derive(Clone, Debug)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    comp: Vec<Vec<Option<usize>>>,
}

#[derive(Deserialize)]
struct ArrowLiteral {
    name: String,
    src: String,
    dst: String,
}

/// `{"objects": [..], "morphisms": [{"name","src","dst"}], "compose": [["g","f","g∘f"], ..]}`;
/// identities `id_X` are implicit.
#[derive(Deserialize)]
struct CatLiteral {
    objects: Vec<String>,
    #[serde(default)]
    morphisms: Vec<ArrowLiteral>,
    #[serde(default)]
    compose: Vec<[String; 3]>,
}

impl FinCat {
    /// Builds the category from its non-identity arrows and every composite of two non-identity arrows.
    pub fn new(objects: &[&str], arrows: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]) -> Result<Self> {
        let index = |names: &[String], s: &str, what: &str| {
            names.iter().position(|o| o == s).ok_or_else(|| Error::Invalid(format!("unknown {what} {s:?}")))
        };
        let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let mut all: Vec<Arrow> = (0..objs.len()).map(|i| Arrow { name: format!("id_{}", objs[i]), src: i, dst: i }).collect();
        for &(name, s, d) in arrows {
            all.push(Arrow { name: name.into(), src: index(&objs, s, "object")?, dst: index(&objs, d, "object")? });
        }
        let names: Vec<String> = all.iter().map(|a| a.name.clone()).collect();
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate morphism name {n:?}")));
            }
        }
        let k = all.len();
        let nobj = objs.len();
        let mut comp = vec![vec![None; k]; k];
        for g in 0..k {
            for f in 0..k {
                if all[f].dst != all[g].src {
                    continue;
                }
                if g < nobj {
                    comp[g][f] = Some(f);
                } else if f < nobj {
                    comp[g][f] = Some(g);
                }
            }
        }
        for &(g, f, h) in compose {
            let (g, f, h) = (index(&names, g, "morphism")?, index(&names, f, "morphism")?, index(&names, h, "morphism")?);
            if all[f].dst != all[g].src {
                return Err(Error::Invalid(format!("{} ∘ {} is not composable", names[g], names[f])));
            }
            if all[h].src != all[f].src || all[h].dst != all[g].dst {
                return Err(Error::Invalid(format!("{} ∘ {} = {} is ill-typed", names[g], names[f], names[h])));
            }
            if g < nobj || f < nobj {
                if comp[g][f] != Some(h) {
                    return Err(Error::Invalid(format!("{} ∘ {} contradicts the identity law", names[g], names[f])));
                }
                continue;
            }
            if comp[g][f].replace(h).is_some_and(|old| old != h) {
                return Err(Error::Invalid(format!("{} ∘ {} given twice", names[g], names[f])));
            }
        }
        let cat = FinCat { objects: objs, arrows: all, comp };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let k = self.arrows.len();
        for g in 0..k {
            for f in 0..k {
                if self.arrows[f].dst == self.arrows[g].src && self.comp[g][f].is_none() {
                    return Err(Error::Invalid(format!("missing composite {} ∘ {}", self.arrows[g].name, self.arrows[f].name)));
                }
            }
        }
        for h in 0..k {
            for g in 0..k {
                let Some(hg) = self.comp[h][g] else { continue };
                for f in 0..k {
                    let Some(gf) = self.comp[g][f] else { continue };
                    if self.comp[hg][f] != self.comp[h][gf] {
                        return Err(Error::Invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let lit: CatLiteral = serde_json::from_str(s).map_err(|e| Error::Parse(format!("category literal: {e}")))?;
        let objects: Vec<&str> = lit.objects.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> =
            lit.morphisms.iter().map(|a| (a.name.as_str(), a.src.as_str(), a.dst.as_str())).collect();
        let compose: Vec<(&str, &str, &str)> = lit.compose.iter().map(|[g, f, h]| (g.as_str(), f.as_str(), h.as_str())).collect();
        Self::new(&objects, &arrows, &compose)
    }

    /// One object `X`, identity only.
    pub fn point() -> Self {
        Self::new(&["X"], &[], &[]).expect("valid")
    }

    pub fn discrete(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::new(&refs, &[], &[]).expect("valid")
    }

    /// The cyclic group `C_k` as a one-object category, generator `g`, morphisms `g^i`.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("cyclic group order must be positive".into()));
        }
        let names: Vec<String> = (1..k).map(|i| format!("g{i}")).collect();
        let name = |i: usize| if i % k == 0 { "id_X".to_string() } else { format!("g{}", i % k) };
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "X", "X")).collect();
        let table: Vec<(String, String, String)> =
            (1..k).flat_map(|i| (1..k).map(move |j| (i, j))).map(|(i, j)| (name(i), name(j), name(i + j))).collect();
        let compose: Vec<(&str, &str, &str)> = table.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        Self::new(&["X"], &arrows, &compose)
    }

    /// Objects `A`, `B`; an idempotent `e : A → A` and `u : A → B` with `u ∘ e = u`.
    pub fn idempotent_arrow() -> Self {
        Self::new(&["A", "B"], &[("e", "A", "A"), ("u", "A", "B")], &[("e", "e", "e"), ("u", "e", "u")]).expect("valid")
    }

    /// `point`, `idem`, `discrete:N`, `cyclic:K`, or a JSON literal.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad size in category {s:?}")));
        match s.split_once(':') {
            None if s == "point" => Ok(Self::point()),
            None if s == "idem" => Ok(Self::idempotent_arrow()),
            Some(("discrete", n)) => Ok(Self::discrete(num(n)?)),
            Some(("cyclic", k)) => Self::cyclic(num(k)?),
            _ => Err(Error::Parse(format!("unknown category {s:?}"))),
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn id(&self, x: usize) -> usize {
        x
    }

    pub fn is_identity(&self, f: usize) -> bool {
        f < self.objects.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.arrows[f].dst
    }

    pub fn name(&self, f: usize) -> &str {
        &self.arrows[f].name
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == x && self.arrows[f].dst == y).collect()
    }

    pub fn from_object(&self, x: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == x).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.src(f), self.dst(f));
        self.hom(y, x).into_iter().find(|&g| self.comp[g][f] == Some(x) && self.comp[f][g] == Some(y))
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| Error::Parse(format!("unknown object {name:?}")))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::Parse(format!("unknown morphism {name:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        assert_eq!(FinCat::point().num_arrows(), 1);
        assert_eq!(FinCat::discrete(3).num_arrows(), 3);
        let c = FinCat::cyclic(4).unwrap();
        assert_eq!(c.num_arrows(), 4);
        let g1 = c.arrow_index("g1").unwrap();
        assert_eq!(c.name(c.inverse(g1).unwrap()), "g3");
        let c = FinCat::idempotent_arrow();
        let (e, u) = (c.arrow_index("e").unwrap(), c.arrow_index("u").unwrap());
        assert_eq!(c.compose(u, e), Some(u));
        assert_eq!(c.compose(e, u), None);
        assert_eq!(c.inverse(e), None);
        assert_eq!(c.hom(0, 1), vec![u]);
    }

    #[test]
    fn rejects_bad_tables() {
        // e ∘ e missing
        assert!(FinCat::new(&["A"], &[("e", "A", "A")], &[]).is_err());
        // a ∘ a = b, b ∘ a = a, a ∘ b = id_A, b ∘ b = b: (a ∘ a) ∘ b = b ∘ b = b but a ∘ (a ∘ b) = a
        let bad = FinCat::new(
            &["A"],
            &[("a", "A", "A"), ("b", "A", "A")],
            &[("a", "a", "b"), ("b", "a", "a"), ("a", "b", "id_A"), ("b", "b", "b")],
        );
        assert!(bad.unwrap_err().to_string().contains("associativity"));
        assert!(FinCat::new(&["A", "B"], &[("u", "A", "B")], &[("u", "u", "u")]).is_err());
    }

    #[test]
    fn json_literal() {
        let c = FinCat::from_json(
            r#"{"objects":["A","B"],"morphisms":[{"name":"e","src":"A","dst":"A"},{"name":"u","src":"A","dst":"B"}],
                "compose":[["e","e","e"],["u","e","u"]]}"#,
        )
        .unwrap();
        assert_eq!(c.num_arrows(), 4);
        assert!(FinCat::from_json("{").is_err());
        assert!(FinCat::parse("cyclic:3").is_ok());
        assert!(FinCat::parse("nope").is_err());
    }
}
