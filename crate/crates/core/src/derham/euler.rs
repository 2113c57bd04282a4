use super::FpAlgebra;
use crate::error::Result;
use crate::exactring::{Field, Polynomial, RingDescriptor, RingElem};
use crate::fpmod::{ModMorphism, ModulePresentation};

/// The split exact sequence `0 → E/(λ)⊗R → E⊗R·e* → R → 0` on the chart `λ = e₀` of `P(k^{n+1})`,
/// with `R = Sym(E)/(λ−1) = k[y₁..y_n]`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EulerReport {
    pub n: usize,
    pub p_iota_zero: bool,
    pub s_iota_id: bool,
    pub p_t_id: bool,
    pub split_id: bool,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.p_iota_zero && self.s_iota_id && self.p_t_id && self.split_id
    }
}

fn same(f: &ModMorphism, g: &ModMorphism) -> Result<bool> {
    f.equals(g)
}

pub fn euler_contraction_check(n: usize) -> Result<EulerReport> {
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let q = Field::Rationals;
    let r = FpAlgebra::new(&RingDescriptor::poly_quotient(q.clone(), &refs, vec![])?)?.ring;
    let y = |i: usize| RingElem::Poly(Polynomial::var(&q, n, i - 1));
    let (one, zero) = (r.one(), r.zero());

    // Ω ≅ E/(λ) ⊗ R on ē₁..ē_n; the middle term on e_i ⊗ e*, i = 0..n; the unit on 1
    let omega = ModulePresentation::free(&r, n);
    let mid = ModulePresentation::free(&r, n + 1);
    let unit = ModulePresentation::free(&r, 1);

    // ι(ē_i) = e_i⊗e* − λ⊗(e_i/λ)e* = e_i⊗e* − y_i·(e₀⊗e*)
    let iota = ModMorphism::new(
        &omega,
        &mid,
        (0..=n)
            .map(|row| {
                (1..=n)
                    .map(|i| if row == 0 { r.neg(&y(i)) } else if row == i { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect(),
    )?;
    // p(e_i⊗e*) = e_i/λ
    let p = ModMorphism::new(&mid, &unit, vec![(0..=n).map(|i| if i == 0 { one.clone() } else { y(i) }).collect()])?;
    // t(1) = λ⊗e*
    let t = ModMorphism::new(&unit, &mid, (0..=n).map(|i| vec![if i == 0 { one.clone() } else { zero.clone() }]).collect())?;
    // s(e_i⊗e*) = ē_i, with ē₀ = 0
    let s = ModMorphism::new(
        &mid,
        &omega,
        (1..=n).map(|row| (0..=n).map(|i| if i == row { one.clone() } else { zero.clone() }).collect()).collect(),
    )?;

    Ok(EulerReport {
        n,
        p_iota_zero: p.compose(&iota)?.is_zero()?,
        s_iota_id: same(&s.compose(&iota)?, &ModMorphism::identity(&omega))?,
        p_t_id: same(&p.compose(&t)?, &ModMorphism::identity(&unit))?,
        split_id: same(&t.compose(&p)?.add(&iota.compose(&s)?)?, &ModMorphism::identity(&mid))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_identities() {
        for n in 0..=3 {
            assert!(euler_contraction_check(n).unwrap().passed(), "{n}");
        }
    }
}
