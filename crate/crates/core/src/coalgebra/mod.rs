//! Finite coalgebras `α : S → F(S)` for the powerset functor `P(X)`, the
//! stream functor `B × X` and the transition-system functor `P(A × X)`,
//! with homomorphisms, bisimulations and metric coinduction.
//!
//! All three are stored as labelled successor sets: a powerset coalgebra
//! uses one silent label and a stream coalgebra has exactly one transition
//! per state, labelled by its output.

mod bisim;
mod coinduction;
mod dynamics;

pub use bisim::{greatest_bisimulation, kernel, minimize, naive_greatest_bisimulation, span_image, Bisimulation};
pub use coinduction::{metric_coinduction_iterate, Certificate, CoinductionOptions, Modulus};
pub use dynamics::BackpropDynamics;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label of the single transition kind in a powerset coalgebra.
pub const SILENT: &str = "τ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    Powerset,
    Stream,
    Lts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    functor: Functor,
    states: Vec<String>,
    labels: Vec<String>,
    /// state ↦ set of `(label, successor)`
    transitions: Vec<BTreeSet<(usize, usize)>>,
}

fn index_of(names: &[String], kind: &'static str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(Error::Duplicate { kind, id: n.clone() });
        }
    }
    Ok(out)
}

impl Coalgebra {
    fn from_parts(
        functor: Functor,
        states: Vec<String>,
        labels: Vec<String>,
        transitions: Vec<BTreeSet<(usize, usize)>>,
    ) -> Result<Self> {
        index_of(&states, "state")?;
        index_of(&labels, "label")?;
        let c = Coalgebra { functor, states, labels, transitions };
        if c.transitions.len() != c.states.len() {
            return Err(Error::Arity { expected: c.states.len(), got: c.transitions.len() });
        }
        let (n, l) = (c.states.len(), c.labels.len());
        if c.transitions.iter().flatten().any(|&(a, t)| a >= l || t >= n) {
            return Err(Error::Malformed("transition out of range".into()));
        }
        if functor == Functor::Stream {
            if let Some(s) = (0..n).find(|&s| c.transitions[s].len() != 1) {
                return Err(Error::invalid("stream coalgebra", format!("state `{}` needs exactly one output", c.states[s])));
            }
        }
        Ok(c)
    }

    /// A transition system from `(source, label, target)` triples.
    pub fn lts<S: AsRef<str>>(states: &[S], labels: &[S], triples: &[(S, S, S)]) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.as_ref().to_string()).collect();
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let (si, li) = (index_of(&states, "state")?, index_of(&labels, "label")?);
        let mut transitions = vec![BTreeSet::new(); states.len()];
        for (s, a, t) in triples {
            let get = |m: &HashMap<String, usize>, k: &'static str, x: &S| {
                m.get(x.as_ref()).copied().ok_or_else(|| Error::unknown(k, x.as_ref()))
            };
            transitions[get(&si, "state", s)?].insert((get(&li, "label", a)?, get(&si, "state", t)?));
        }
        Coalgebra::from_parts(Functor::Lts, states, labels, transitions)
    }

    /// `α(s) ⊆ S` for a powerset coalgebra.
    pub fn powerset(states: Vec<String>, successors: Vec<BTreeSet<usize>>) -> Result<Self> {
        let transitions = successors.into_iter().map(|s| s.into_iter().map(|t| (0, t)).collect()).collect();
        Coalgebra::from_parts(Functor::Powerset, states, vec![SILENT.to_string()], transitions)
    }

    /// `α(s) = (head(s), tail(s))` for a stream coalgebra over `alphabet`.
    pub fn stream(states: Vec<String>, alphabet: Vec<String>, head: &[usize], tail: &[usize]) -> Result<Self> {
        if head.len() != states.len() || tail.len() != states.len() {
            return Err(Error::Arity { expected: states.len(), got: head.len().min(tail.len()) });
        }
        let transitions = head.iter().zip(tail).map(|(&h, &t)| BTreeSet::from([(h, t)])).collect();
        Coalgebra::from_parts(Functor::Stream, states, alphabet, transitions)
    }

    pub fn functor(&self) -> Functor {
        self.functor
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn state(&self, name: &str) -> Result<usize> {
        self.states.iter().position(|s| s == name).ok_or_else(|| Error::unknown("state", name))
    }

    pub fn transitions(&self, s: usize) -> &BTreeSet<(usize, usize)> {
        &self.transitions[s]
    }

    pub fn successors(&self, s: usize, label: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions[s].iter().filter(move |&&(a, _)| a == label).map(|&(_, t)| t)
    }

    fn stream_step(&self, s: usize) -> (usize, usize) {
        *self.transitions[s].iter().next().expect("stream states have one transition")
    }

    pub fn head(&self, s: usize) -> Option<&str> {
        (self.functor == Functor::Stream).then(|| self.labels[self.stream_step(s).0].as_str())
    }

    pub fn tail(&self, s: usize) -> Option<usize> {
        (self.functor == Functor::Stream).then(|| self.stream_step(s).1)
    }

    /// The first `k` outputs of the stream unfolded from `s`.
    pub fn behavior(&self, s: usize, k: usize) -> Result<Vec<String>> {
        if self.functor != Functor::Stream {
            return Err(Error::invalid("behavior", "only stream coalgebras have a single behavior"));
        }
        if s >= self.len() {
            return Err(Error::unknown("state", s.to_string()));
        }
        let mut out = Vec::with_capacity(k);
        let mut x = s;
        for _ in 0..k {
            let (h, t) = self.stream_step(x);
            out.push(self.labels[h].clone());
            x = t;
        }
        Ok(out)
    }

    /// `F(f)(α(s))`: the image of `α(s)` under `f`, labels kept.
    fn image(&self, s: usize, f: &[usize]) -> BTreeSet<(usize, usize)> {
        self.transitions[s].iter().map(|&(a, t)| (a, f[t])).collect()
    }

    pub fn to_file(&self) -> LtsFile {
        let transitions = (0..self.len())
            .flat_map(|s| {
                self.transitions[s]
                    .iter()
                    .map(move |&(a, t)| [self.states[s].clone(), self.labels[a].clone(), self.states[t].clone()])
            })
            .collect();
        LtsFile { states: self.states.clone(), labels: self.labels.clone(), transitions }
    }
}

fn same_alphabet(c1: &Coalgebra, c2: &Coalgebra) -> Result<()> {
    if c1.functor != c2.functor {
        return Err(Error::invalid("coalgebras", format!("{:?} vs {:?}", c1.functor, c2.functor)));
    }
    if c1.labels != c2.labels {
        return Err(Error::invalid("coalgebras", "label alphabets differ"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismReport {
    pub holds: bool,
    /// first state where `F(f) ∘ α_S ≠ α_T ∘ f`
    pub witness: Option<String>,
}

/// Checks `F(f) ∘ α_S = α_T ∘ f` state by state.
pub fn check_homomorphism(f: &[usize], c1: &Coalgebra, c2: &Coalgebra) -> Result<HomomorphismReport> {
    same_alphabet(c1, c2)?;
    if f.len() != c1.len() || f.iter().any(|&t| t >= c2.len()) {
        return Err(Error::invalid("state map", "not a function between the carriers"));
    }
    let bad = (0..c1.len()).find(|&s| c1.image(s, f) != c2.transitions[f[s]]);
    Ok(HomomorphismReport { holds: bad.is_none(), witness: bad.map(|s| c1.states[s].clone()) })
}

/// `{"states": [...], "labels": [...], "transitions": [[s, a, t], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LtsFile {
    pub states: Vec<String>,
    pub labels: Vec<String>,
    pub transitions: Vec<[String; 3]>,
}

impl LtsFile {
    pub fn build(&self) -> Result<Coalgebra> {
        let triples: Vec<(&str, &str, &str)> =
            self.transitions.iter().map(|[s, a, t]| (s.as_str(), a.as_str(), t.as_str())).collect();
        let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
        let labels: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        Coalgebra::lts(&states, &labels, &triples)
    }
}
