use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, FinFunctor, FunctorSearch};

/// A lifting square of finite categories and functors.
#[derive(Debug, Clone)]
pub struct CategorySquare {
    pub f: FinFunctor,
    pub p: FinFunctor,
    pub mu: FinFunctor,
    pub nu: FinFunctor,
}

impl CategorySquare {
    pub fn new(f: FinFunctor, p: FinFunctor, mu: FinFunctor, nu: FinFunctor) -> Result<Self> {
        if f.source() != mu.source() || f.target() != nu.source() || mu.target() != p.source() || nu.target() != p.target()
        {
            return Err(Error::invalid("lifting square", "the four functors do not form a square"));
        }
        let lhs = mu.then(&p)?;
        let rhs = f.then(&nu)?;
        if !lhs.same_maps(&rhs) {
            return Err(Error::invalid("lifting square", "p ∘ μ ≠ ν ∘ f"));
        }
        Ok(CategorySquare { f, p, mu, nu })
    }

    pub fn is_solution(&self, h: &FinFunctor) -> bool {
        h.validate().is_valid()
            && h.then(&self.p).is_ok_and(|ph| ph.same_maps(&self.nu))
            && self.f.then(h).is_ok_and(|hf| hf.same_maps(&self.mu))
    }

    /// All diagonal functors `h : B → X`.
    pub fn solve(&self, budget: u64) -> Result<Vec<FinFunctor>> {
        let (a, b) = (self.f.source(), self.f.target());
        // values forced by h ∘ f = μ
        let mut forced_ob = vec![None; b.num_objects()];
        for x in a.objects() {
            let slot = &mut forced_ob[self.f.ob(x)];
            match *slot {
                Some(y) if y != self.mu.ob(x) => return Ok(Vec::new()),
                _ => *slot = Some(self.mu.ob(x)),
            }
        }
        let mut forced_mor = vec![None; b.num_morphisms()];
        for m in a.morphisms() {
            let slot = &mut forced_mor[self.f.mor(m)];
            match *slot {
                Some(y) if y != self.mu.mor(m) => return Ok(Vec::new()),
                _ => *slot = Some(self.mu.mor(m)),
            }
        }
        let object_ok = |bo: usize, xo: usize| {
            self.p.ob(xo) == self.nu.ob(bo) && forced_ob[bo].is_none_or(|y| y == xo)
        };
        let morphism_ok = |bm: usize, xm: usize| {
            self.p.mor(xm) == self.nu.mor(bm) && forced_mor[bm].is_none_or(|y| y == xm)
        };
        let search = FunctorSearch { object_ok: Some(&object_ok), morphism_ok: Some(&morphism_ok), limit: None, budget };
        let hs = enumerate_functors(b, self.p.source(), &search)?;
        debug_assert!(hs.iter().all(|h| self.is_solution(h)));
        Ok(hs)
    }
}
