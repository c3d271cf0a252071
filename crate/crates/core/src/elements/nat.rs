use super::{LeftKan, RightKan, SetInstance};
use crate::error::{Budget, Error, Result};
use crate::fincat::FinFunctor;

/// Components `α_s : A s → B s` as index tables.
pub type NaturalMap = Vec<Vec<usize>>;

pub fn is_natural(a: &SetInstance, b: &SetInstance, alpha: &NaturalMap) -> bool {
    let c = a.shape();
    if **c != **b.shape() || alpha.len() != c.num_objects() {
        return false;
    }
    let shapes_ok = c.objects().all(|s| alpha[s].len() == a.size(s) && alpha[s].iter().all(|&y| y < b.size(s)));
    shapes_ok
        && c.morphisms().all(|m| {
            let (s, t) = (c.dom(m), c.cod(m));
            (0..a.size(s)).all(|x| b.apply(m, alpha[s][x]) == alpha[t][a.apply(m, x)])
        })
}

pub fn is_natural_iso(a: &SetInstance, b: &SetInstance, alpha: &NaturalMap) -> bool {
    is_natural(a, b, alpha)
        && a.shape().objects().all(|s| {
            let mut seen = vec![false; b.size(s)];
            a.size(s) == b.size(s) && alpha[s].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
}

/// Every natural transformation `A ⇒ B`, by backtracking over elements
/// with each naturality constraint checked once both ends are fixed.
pub fn enumerate_natural_maps(a: &SetInstance, b: &SetInstance, budget: u64) -> Result<Vec<NaturalMap>> {
    let c = a.shape();
    if **c != **b.shape() {
        return Err(Error::invalid("natural maps", "instances are over different schemas"));
    }
    let slots: Vec<(usize, usize)> = c.objects().flat_map(|s| (0..a.size(s)).map(move |x| (s, x))).collect();
    let mut position = vec![Vec::new(); c.num_objects()];
    for (p, &(s, _)) in slots.iter().enumerate() {
        position[s].push(p);
    }
    // (morphism, element) constraints, filed under the later slot
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); slots.len()];
    for m in c.morphisms() {
        let (s, t) = (c.dom(m), c.cod(m));
        for x in 0..a.size(s) {
            let later = position[s][x].max(position[t][a.apply(m, x)]);
            checks[later].push((m, x));
        }
    }
    let mut alpha: NaturalMap = c.objects().map(|s| vec![usize::MAX; a.size(s)]).collect();
    let mut out = Vec::new();
    let mut budget = Budget::new(budget);

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        slots: &[(usize, usize)],
        checks: &[Vec<(usize, usize)>],
        a: &SetInstance,
        b: &SetInstance,
        alpha: &mut NaturalMap,
        budget: &mut Budget,
        out: &mut Vec<NaturalMap>,
    ) -> Result<()> {
        let Some(&(s, x)) = slots.get(depth) else {
            out.push(alpha.clone());
            return Ok(());
        };
        let c = a.shape();
        for y in 0..b.size(s) {
            budget.tick()?;
            alpha[s][x] = y;
            let ok = checks[depth].iter().all(|&(m, z)| {
                let (d, t) = (c.dom(m), c.cod(m));
                b.apply(m, alpha[d][z]) == alpha[t][a.apply(m, z)]
            });
            if ok {
                go(depth + 1, slots, checks, a, b, alpha, budget, out)?;
            }
        }
        alpha[s][x] = usize::MAX;
        Ok(())
    }

    go(0, &slots, &checks, a, b, &mut alpha, &mut budget, &mut out)?;
    Ok(out)
}

/// `Nat(Σ_F δ, ε) → Nat(δ, Δ_F ε)`: `α ↦ α_{F s}([(s, id), x])`.
pub fn left_transpose(f: &FinFunctor, sigma: &LeftKan, delta: &SetInstance, alpha: &NaturalMap) -> NaturalMap {
    let t_cat = f.target();
    f.source()
        .objects()
        .map(|s| {
            let t = f.ob(s);
            (0..delta.size(s)).map(|x| alpha[t][sigma.class_of(t, s, t_cat.id(t), x)]).collect()
        })
        .collect()
}

/// `Nat(δ, Δ_F ε) → Nat(Σ_F δ, ε)`: `[(a, e), x] ↦ ε(e)(β_a(x))`.
pub fn left_untranspose(sigma: &LeftKan, epsilon: &SetInstance, beta: &NaturalMap) -> NaturalMap {
    sigma
        .colimits
        .iter()
        .enumerate()
        .map(|(t, colim)| {
            colim
                .classes
                .iter()
                .map(|class| {
                    let (o, x) = class[0];
                    let (a, _, e) = sigma.commas[t].objects[o];
                    epsilon.apply(e, beta[a][x])
                })
                .collect()
        })
        .collect()
}

/// `Nat(Δ_F ε, δ) → Nat(ε, Π_F δ)`: `y ↦ (β_a(ε(e)(y)))_{(a, e : t → F a)}`.
pub fn right_transpose(pi: &RightKan, epsilon: &SetInstance, beta: &NaturalMap) -> Result<NaturalMap> {
    pi.commas
        .iter()
        .enumerate()
        .map(|(t, comma)| {
            (0..epsilon.size(t))
                .map(|y| {
                    let family: Vec<usize> =
                        comma.objects.iter().map(|&(_, a, e)| beta[a][epsilon.apply(e, y)]).collect();
                    pi.family_index(t, &family)
                        .ok_or_else(|| Error::invalid("transpose", "components are not natural"))
                })
                .collect()
        })
        .collect()
}

/// `Nat(ε, Π_F δ) → Nat(Δ_F ε, δ)`: read the family at `(s, id_{F s})`.
pub fn right_untranspose(f: &FinFunctor, pi: &RightKan, gamma: &NaturalMap) -> NaturalMap {
    let t_cat = f.target();
    f.source()
        .objects()
        .map(|s| {
            let t = f.ob(s);
            let o = pi.comma_object(t, s, t_cat.id(t));
            gamma[t].iter().map(|&fam| pi.limits[t].families[fam][o]).collect()
        })
        .collect()
}
