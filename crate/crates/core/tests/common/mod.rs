#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gaia_core::coalgebra::{
    greatest_bisimulation, metric_coinduction_iterate, naive_greatest_bisimulation, Coalgebra, CoinductionOptions,
    Modulus,
};
use gaia_core::elements::{
    enumerate_natural_maps, left_kan_migration, left_transpose, left_untranspose, pullback_migration,
    right_kan_migration, right_transpose, right_untranspose, verify_elements_pullback, SetInstance,
};
use gaia_core::fincat::{enumerate_functors, FunctorSearch};
use gaia_core::genmetric::{check_isometry, Dist, GenMetricSpace};
use gaia_core::homology::{chain_complex, classifying_space_homology, HomologyResult};
use gaia_core::learn::{
    all_permutations, backprop, functoriality_check, gradient_check, random_permutation, random_samples,
    random_tokens, stack_equivariance_error, zeroth_order, Activation, ErrorFn, ParamFn, Schedule, StepContext,
    TransformerBlock,
};
use gaia_core::lifting::{has_rlp, FinSetMap};
use gaia_core::random;
use gaia_core::simplicial::{
    build_shape, enumerate_maps, functor_from_nerve_map, inner_horn_report, is_kan_complex, nerve, nerve_map,
    HornProblem, MapSearch, ShapeKind,
};
use gaia_core::{FinCategory, FinFunctor, SetDiagram, SimplicialSet, DEFAULT_BUDGET};
use rand::Rng;

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, what: &str, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---- categories -------------------------------------------------------------

pub fn random_categories(seed: u64, count: usize, max_objects: usize) -> Vec<Arc<FinCategory>> {
    let mut rng = random::rng(seed);
    (0..count).map(|_| Arc::new(random::random_category(&mut rng, max_objects))).collect()
}

pub fn simplicial_identities() -> Outcome {
    let start = Instant::now();
    let mut simplices = 0;
    for (i, c) in random_categories(101, 50, 4).iter().enumerate() {
        let x = nerve(c, 3).set;
        let bad = x.validate();
        ensure(bad.is_empty(), || format!("category {i}: {} fails", bad[0].identity))?;
        simplices += (0..=3).map(|n| x.len(n)).sum::<usize>();
    }
    let t = timed(Duration::from_secs(10), "identity suite", start)?;
    Ok(format!("50 nerves, {simplices} simplices, {t:.2?}"))
}

pub fn full_faithfulness() -> Outcome {
    let cats = random_categories(202, 40, 3);
    let mut functors_total = 0;
    for (i, pair) in cats.chunks(2).enumerate() {
        let (c, d) = (&pair[0], &pair[1]);
        let (nc, nd) = (nerve(c, 3), nerve(d, 3));
        let functors = enumerate_functors(c, d, &FunctorSearch::default()).map_err(err)?;
        let (sc, sd) = (Arc::new(nc.set.clone()), Arc::new(nd.set.clone()));
        let maps = enumerate_maps(&sc, &sd, &MapSearch::default()).map_err(err)?;
        ensure(functors.len() == maps.len(), || {
            format!("pair {i}: {} functors but {} simplicial maps", functors.len(), maps.len())
        })?;
        // θ: F ↦ N(F) hits every map exactly once, and reading back recovers F
        let mut hit = BTreeSet::new();
        for f in &functors {
            let m = nerve_map(f, &nc, &nd).map_err(err)?;
            let j = maps.iter().position(|x| x.levels() == m.levels()).ok_or_else(|| format!("pair {i}: N(F) missing"))?;
            ensure(hit.insert(j), || format!("pair {i}: two functors with one nerve map"))?;
            let back = functor_from_nerve_map(&m, c, d, &nd).map_err(err)?;
            ensure(back.same_maps(f), || format!("pair {i}: θ⁻¹θ F ≠ F"))?;
        }
        functors_total += functors.len();
    }
    Ok(format!("20 pairs, {functors_total} functors matched one-to-one"))
}

pub fn horn_laws() -> Outcome {
    let mut horns = 0;
    for (i, c) in random_categories(303, 50, 4).iter().enumerate() {
        let x = nerve(c, 3).set;
        let r = inner_horn_report(&x, 3).map_err(err)?;
        ensure(r.complete && r.unique, || format!("category {i}: inner horn {:?}", r.witness.or(r.non_unique)))?;
        horns += r.horns_checked;
    }
    let z2 = nerve(&FinCategory::cyclic_group(2), 3).set;
    let k = is_kan_complex(&z2, 3).map_err(err)?;
    ensure(k.kan, || format!("ℤ/2 not Kan: {:?}", k.witness))?;
    let z2_horns = k.horns_checked;

    let interval = FinCategory::ordinal(1);
    let x = nerve(&interval, 2).set;
    let k = is_kan_complex(&x, 2).map_err(err)?;
    ensure(!k.kan, || "[1] reported Kan".into())?;
    let w = k.witness.ok_or("no witness")?;
    let expected = vec![(1, "0<=0".to_string()), (2, "0<=1".to_string())];
    ensure((w.n, w.k, &w.faces) == (2, 0, &expected), || format!("witness {w:?}"))?;
    let faces = w.faces.iter().cloned().collect();
    let fillers = HornProblem::from_names(&x, 2, 0, &faces).map_err(err)?.fillers();
    ensure(fillers.is_empty(), || format!("{} fillers for the witness", fillers.len()))?;
    Ok(format!("{horns} inner horns uniquely filled; ℤ/2 Kan ({z2_horns} horns); [1] fails Λ²₀"))
}

// ---- learners ---------------------------------------------------------------

/// A random primitive `ℝⁿ → ℝᵐ` with `n` given.
pub fn random_primitive(rng: &mut impl Rng, n: usize) -> ParamFn {
    let m = rng.random_range(1..=3);
    match rng.random_range(0..5) {
        0 => ParamFn::affine(n, m),
        1 => ParamFn::linear(n, m),
        2 => ParamFn::scale(n),
        3 => ParamFn::offset(n),
        _ => {
            let acts = [Activation::Tanh, Activation::Sigmoid, Activation::Softplus, Activation::Square];
            ParamFn::activation(n, acts[rng.random_range(0..acts.len())])
        }
    }
}

pub fn backprop_functoriality() -> Outcome {
    let mut rng = random::rng(404);
    let mut worst_dev: f64 = 0.0;
    let mut worst_grad: f64 = 0.0;
    for i in 0..20 {
        let n = rng.random_range(1..=3);
        let f = random_primitive(&mut rng, n);
        let g = random_primitive(&mut rng, f.output_dim());
        let epsilon = rng.random_range(0.01..0.5);
        let error = ErrorFn::quadratic(rng.random_range(0.5..2.0)).map_err(err)?;
        let r = functoriality_check(&f, &g, epsilon, error, 100, 1000 + i, 1e-9).map_err(err)?;
        ensure(r.passed, || format!("pair {i}: deviation {:?}", r.deviation))?;
        worst_dev = worst_dev.max(r.deviation.max());
        let whole = f.then(&g).map_err(err)?;
        let l = backprop(&whole, vec![0.0; whole.param_dim()], epsilon, error).map_err(err)?;
        for s in random_samples(l.map().as_ref(), 100, 1.0, 2000 + i) {
            let e = gradient_check(&whole, &error, &s.p, &s.a, &s.b, 1e-6);
            ensure(e <= 1e-5, || format!("pair {i}: gradient relative error {e:e}"))?;
            worst_grad = worst_grad.max(e);
        }
    }
    Ok(format!("20 pairs, max deviation {worst_dev:e}, max gradient error {worst_grad:e}"))
}

pub fn transformer_equivariance() -> Outcome {
    let block = TransformerBlock::random(4, 2, 3, 8, 11);
    let blocks = vec![block];
    let x = random_tokens(4, 4, 12);
    let mut worst: f64 = 0.0;
    let perms = all_permutations(4);
    ensure(perms.len() == 24, || format!("{} permutations of 4", perms.len()))?;
    for p in &perms {
        worst = worst.max(stack_equivariance_error(&blocks, &x, p).map_err(err)?);
    }
    let x16 = random_tokens(4, 16, 13);
    let mut rng = random::rng(14);
    for _ in 0..50 {
        let p = random_permutation(16, &mut rng);
        worst = worst.max(stack_equivariance_error(&blocks, &x16, &p).map_err(err)?);
    }
    ensure(worst <= 1e-6, || format!("max error {worst:e}"))?;
    Ok(format!("24 + 50 permutations, max error {worst:e}"))
}

// ---- migration --------------------------------------------------------------

pub struct MigrationFixture {
    pub f: FinFunctor,
    pub delta: SetInstance,
    pub epsilon: SetInstance,
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Hand-built cases plus random functors between random schemas with
/// ≤ 3 objects and tables of ≤ 3 elements.
pub fn migration_fixtures() -> Vec<MigrationFixture> {
    let mut out = Vec::new();
    let ab = Arc::new(FinCategory::discrete(&["a", "b"]));
    let c = Arc::new(FinCategory::discrete(&["c"]));
    let collapse =
        FinFunctor::from_names(ab.clone(), c.clone(), &[("a", "c"), ("b", "c")], &[] as &[(&str, &str)]).expect("collapse");
    let delta = SetDiagram::from_names(ab.clone(), &[("a", strings(&["1", "2"])), ("b", strings(&["3"]))], &[] as &[(&str, Vec<(String, String)>)])
        .expect("delta");
    let epsilon = SetDiagram::from_names(c.clone(), &[("c", strings(&["1", "2"]))], &[] as &[(&str, Vec<(String, String)>)]).expect("epsilon");
    out.push(MigrationFixture { f: collapse, delta, epsilon });

    let i1 = Arc::new(FinCategory::ordinal(1));
    let i2 = Arc::new(FinCategory::ordinal(2));
    let edge = FinFunctor::from_names(i1.clone(), i2.clone(), &[("0", "0"), ("1", "2")], &[("0<=1", "0<=2")])
        .expect("edge inclusion");
    let mut rng = random::rng(505);
    let delta = random::random_instance(&mut rng, &i1, 3);
    let epsilon = random::random_instance(&mut rng, &i2, 3);
    out.push(MigrationFixture { f: edge, delta, epsilon });

    let cats = random_categories(606, 24, 3);
    for pair in cats.chunks(2) {
        let (s, t) = (&pair[0], &pair[1]);
        let search = FunctorSearch { limit: Some(3), ..FunctorSearch::default() };
        for f in enumerate_functors(s, t, &search).expect("functor search") {
            let delta = random::random_instance(&mut rng, s, 3);
            let epsilon = random::random_instance(&mut rng, t, 3);
            out.push(MigrationFixture { f, delta, epsilon });
        }
    }
    out
}

fn distinct(maps: &[Vec<Vec<usize>>]) -> bool {
    maps.iter().collect::<BTreeSet<_>>().len() == maps.len()
}

pub fn check_adjunctions(fx: &MigrationFixture) -> Result<(usize, usize), String> {
    let (f, delta, epsilon) = (&fx.f, &fx.delta, &fx.epsilon);
    let sigma = left_kan_migration(f, delta).map_err(err)?;
    let back = pullback_migration(f, epsilon).map_err(err)?;
    let lhs = enumerate_natural_maps(&sigma.instance, epsilon, DEFAULT_BUDGET).map_err(err)?;
    let rhs = enumerate_natural_maps(delta, &back, DEFAULT_BUDGET).map_err(err)?;
    ensure(lhs.len() == rhs.len(), || format!("|Nat(Σδ, ε)| = {} but |Nat(δ, Δε)| = {}", lhs.len(), rhs.len()))?;
    let there: Vec<_> = lhs.iter().map(|a| left_transpose(f, &sigma, delta, a)).collect();
    ensure(there.iter().all(|b| rhs.contains(b)) && distinct(&there), || "left transpose is not a bijection".into())?;
    for (a, b) in lhs.iter().zip(&there) {
        ensure(left_untranspose(&sigma, epsilon, b) == *a, || "left transposes are not inverse".into())?;
    }

    let pi = right_kan_migration(f, delta, DEFAULT_BUDGET).map_err(err)?;
    let lhs = enumerate_natural_maps(epsilon, &pi.instance, DEFAULT_BUDGET).map_err(err)?;
    let rhs = enumerate_natural_maps(&back, delta, DEFAULT_BUDGET).map_err(err)?;
    ensure(lhs.len() == rhs.len(), || format!("|Nat(ε, Πδ)| = {} but |Nat(Δε, δ)| = {}", lhs.len(), rhs.len()))?;
    for b in &rhs {
        let g = right_transpose(&pi, epsilon, b).map_err(err)?;
        ensure(lhs.contains(&g), || "right transpose leaves Nat(ε, Πδ)".into())?;
        ensure(right_untranspose(f, &pi, &g) == *b, || "right transposes are not inverse".into())?;
    }
    let pb = verify_elements_pullback(f, epsilon).map_err(err)?;
    ensure(pb.isomorphic, || "∫Δε is not the pullback".into())?;
    Ok((there.len(), rhs.len()))
}

pub fn migration_adjunction() -> Outcome {
    let fixtures = migration_fixtures();
    let mut maps = 0;
    for (i, fx) in fixtures.iter().enumerate() {
        let (a, b) = check_adjunctions(fx).map_err(|e| format!("fixture {i}: {e}"))?;
        maps += a + b;
    }
    Ok(format!("{} fixtures, {maps} natural maps transposed", fixtures.len()))
}

// ---- coalgebras and metrics ---------------------------------------------------

pub fn canonical_lts() -> (Coalgebra, Coalgebra) {
    let s = Coalgebra::lts(
        &["s0", "s1", "s2"],
        &["a", "b"],
        &[("s0", "a", "s1"), ("s0", "a", "s2"), ("s1", "b", "s1"), ("s2", "b", "s2")],
    )
    .expect("lts");
    let t = Coalgebra::lts(&["t0", "t1"], &["a", "b"], &[("t0", "a", "t1"), ("t1", "b", "t1")]).expect("lts");
    (s, t)
}

pub fn bisimulation() -> Outcome {
    let mut rng = random::rng(707);
    let mut pairs = 0;
    for i in 0..100 {
        let density = rng.random_range(0.1..0.5);
        let c1 = random::random_lts(&mut rng, 6, 2, density);
        let c2 = random::random_lts(&mut rng, 6, 2, density);
        let fast = greatest_bisimulation(&c1, &c2).map_err(err)?;
        let slow = naive_greatest_bisimulation(&c1, &c2).map_err(err)?;
        ensure(fast.pairs == slow.pairs, || format!("pair {i}: {:?} vs {:?}", fast.pairs, slow.pairs))?;
        pairs += fast.len();
    }
    let (s, t) = canonical_lts();
    let r = greatest_bisimulation(&s, &t).map_err(err)?;
    let expected = BTreeSet::from([(0, 0), (1, 1), (2, 1)]);
    ensure(r.pairs == expected, || format!("canonical example gave {:?}", r.pairs))?;
    Ok(format!("100 random pairs agree ({pairs} related pairs); canonical relation exact"))
}

pub fn standard_spaces() -> Vec<(&'static str, GenMetricSpace)> {
    let preorder = GenMetricSpace::preorder(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "d")],
    )
    .expect("preorder");
    let strings = GenMetricSpace::strings(&["", "a", "ab", "abc", "b", "ba"], Some("abc")).expect("strings");
    let halfline =
        GenMetricSpace::halfline(&[Dist::zero(), Dist::ratio(1, 2), Dist::int(2), Dist::int(5), Dist::Inf])
            .expect("halfline");
    let line = GenMetricSpace::line(&[(0, 1), (1, 1), (3, 1)]).expect("line");
    let hausdorff = GenMetricSpace::hausdorff(&line, None).expect("hausdorff");
    vec![("preorder", preorder), ("strings", strings), ("halfline", halfline), ("hausdorff", hausdorff)]
}

pub fn yoneda_isometry() -> Outcome {
    for (name, space) in standard_spaces() {
        ensure(space.len() <= 8, || format!("{name} has {} points", space.len()))?;
        let r = check_isometry(&Arc::new(space)).map_err(err)?;
        ensure(r.isometric && r.max_deviation.is_zero(), || format!("{name}: deviation {}", r.max_deviation))?;
    }
    let mut rng = random::rng(808);
    for i in 0..100 {
        let n = rng.random_range(1..=5);
        let space = random::random_quasi_metric(&mut rng, n, 6, 0.2);
        let r = check_isometry(&Arc::new(space)).map_err(err)?;
        ensure(r.isometric && r.max_deviation.is_zero(), || format!("table {i}: deviation {}", r.max_deviation))?;
    }
    Ok("4 constructions and 100 random tables, zero deviation".into())
}

// ---- homology ---------------------------------------------------------------

fn betti_prefix(r: &HomologyResult, n: usize) -> Vec<usize> {
    r.betti[..n].to_vec()
}

pub fn simplex(kind: ShapeKind, n: usize) -> SimplicialSet {
    let x = build_shape(kind, n, None, n).expect("shape");
    match kind {
        ShapeKind::Boundary => x.truncate(n - 1),
        _ => x,
    }
}

pub fn homology_suite() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(&str, SimplicialSet, Vec<usize>)> = vec![
        ("Δ²", simplex(ShapeKind::Standard, 2), vec![1, 0, 0]),
        ("∂Δ²", simplex(ShapeKind::Boundary, 2), vec![1, 1]),
        ("∂Δ³", simplex(ShapeKind::Boundary, 3), vec![1, 0, 1]),
    ];
    for (name, x, betti) in &cases {
        let cx = chain_complex(x);
        ensure(cx.is_complex(), || format!("{name}: ∂∂ ≠ 0"))?;
        let r = cx.homology();
        ensure(r.betti == *betti, || format!("{name}: betti {:?}", r.betti))?;
    }
    let discrete = nerve(&FinCategory::discrete(&["a", "b", "c"]), 3).set;
    let cx = chain_complex(&discrete);
    ensure(cx.is_complex(), || "discrete: ∂∂ ≠ 0".into())?;
    ensure(cx.homology().betti[0] == 3, || "discrete: H₀ rank ≠ 3".into())?;

    let z2 = nerve(&FinCategory::cyclic_group(2), 3).set;
    let cx = chain_complex(&z2);
    ensure(cx.is_complex(), || "ℤ/2: ∂∂ ≠ 0".into())?;
    let r = classifying_space_homology(&FinCategory::cyclic_group(2), 3);
    ensure(r.has_torsion(1, 2), || format!("ℤ/2: H₁ torsion {:?}", r.torsion[1]))?;
    ensure(betti_prefix(&r, 3) == [1, 0, 0], || format!("ℤ/2: betti {:?}", r.betti))?;

    for (i, c) in random_categories(909, 30, 3).iter().enumerate() {
        ensure(chain_complex(&nerve(c, 3).set).is_complex(), || format!("random nerve {i}: ∂∂ ≠ 0"))?;
    }
    let t = timed(Duration::from_secs(5), "homology suite", start)?;
    Ok(format!("all Betti numbers and ℤ/2 torsion as expected, ∂∂ = 0 on 35 complexes, {t:.2?}"))
}

// ---- coinduction and zeroth-order -------------------------------------------------

pub fn quadratic_zeroth_order(seed: u64, steps: usize) -> Result<f64, String> {
    let f = ParamFn::parameters_only(1, 0);
    let error = ErrorFn::quadratic(2.0).map_err(err)?;
    let mut l = zeroth_order(&f, vec![0.0], Schedule::Harmonic { c: 0.5 }, 1e-3, error).map_err(err)?;
    let mut ctx = StepContext::new(seed);
    for _ in 0..steps {
        l.step(&[], &[3.0], &mut ctx);
        ctx.advance();
    }
    Ok((l.params()[0] - 3.0).abs())
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn coinduction_and_zeroth_order() -> Outcome {
    let h = |v: &[f64]| vec![0.5 * v[0] + 1.0];
    let options = CoinductionOptions {
        modulus: Modulus::Estimate { burn_in: 5 },
        tolerance: 1e-9,
        max_iterations: 10_000,
        try_square: false,
    };
    let c = metric_coinduction_iterate(&h, &[0.0], &options, None).map_err(err)?;
    let gap = (c.fixed_point[0] - 2.0).abs();
    ensure(gap <= 1e-9, || format!("fixed point off by {gap:e}"))?;
    ensure(c.iterations <= 40, || format!("{} iterations", c.iterations))?;
    ensure(c.power == 1 && (c.modulus - 0.5).abs() < 1e-12, || format!("modulus {} power {}", c.modulus, c.power))?;
    ensure(c.error_bound <= 1e-9 && c.error_bound >= gap, || format!("error bound {:e} vs gap {gap:e}", c.error_bound))?;

    let gaps = (0..20).map(|s| quadratic_zeroth_order(s, 10_000)).collect::<Result<Vec<_>, _>>()?;
    let m = median(gaps);
    ensure(m <= 0.1, || format!("zeroth-order median |p − 3| = {m}"))?;
    Ok(format!("fixed point within {gap:e} in {} steps, modulus {}; zeroth-order median gap {m:e}", c.iterations, c.modulus))
}

// ---- lifting ---------------------------------------------------------------

pub fn all_maps(dom: usize, cod: usize) -> Vec<FinSetMap> {
    let total = (cod as u64).pow(dom as u32) as usize;
    (0..total)
        .map(|mut code| {
            let table = (0..dom)
                .map(|_| {
                    let y = code % cod.max(1);
                    code /= cod.max(1);
                    y
                })
                .collect();
            FinSetMap::from_table(dom, cod, table).expect("table")
        })
        .collect()
}

pub fn lifting_characterizations() -> Outcome {
    let empty_to_point = FinSetMap::from_table(0, 1, vec![]).map_err(err)?;
    let fold = FinSetMap::from_table(2, 1, vec![0, 0]).map_err(err)?;
    let mut checked = 0;
    for dom in 0..=4 {
        for cod in 0..=4 {
            for p in all_maps(dom, cod) {
                let surj = has_rlp(&p, std::slice::from_ref(&empty_to_point), u64::MAX, DEFAULT_BUDGET).map_err(err)?;
                ensure(surj.holds == p.is_surjective(), || format!("{p:?}: RLP against ∅→• is {}", surj.holds))?;
                let inj = has_rlp(&p, std::slice::from_ref(&fold), u64::MAX, DEFAULT_BUDGET).map_err(err)?;
                ensure(inj.holds == p.is_injective(), || format!("{p:?}: RLP against 2→1 is {}", inj.holds))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} functions, both equivalences exact"))
}
