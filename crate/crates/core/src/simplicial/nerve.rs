use std::collections::HashMap;
use std::sync::Arc;

use super::{LevelData, SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, Mor};

/// The nerve of a category with the chain behind every simplex.
///
/// Vertex `x` is object `x`; an `n`-simplex for `n ≥ 1` is a composable
/// chain `(f_1, …, f_n)` listed in application order.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub set: SimplicialSet,
    pub chains: Vec<Vec<Vec<Mor>>>,
    index: Vec<HashMap<Vec<Mor>, usize>>,
}

impl Nerve {
    /// Simplex index of a chain of length `n ≥ 1`.
    pub fn chain_index(&self, chain: &[Mor]) -> Option<usize> {
        self.index.get(chain.len())?.get(chain).copied()
    }
}

/// `N•C` truncated at `truncation`.
///
/// Inner faces compose adjacent arrows, outer faces drop an end, and
/// degeneracies insert identities.
pub fn nerve(c: &FinCategory, truncation: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<Mor>>> = vec![(0..c.num_objects()).map(|_| Vec::new()).collect()];
    if truncation >= 1 {
        chains.push(c.morphisms().map(|m| vec![m]).collect());
    }
    for n in 2..=truncation {
        let mut next = Vec::new();
        for chain in &chains[n - 1] {
            let end = c.cod(*chain.last().unwrap());
            for m in c.morphisms().filter(|&m| c.dom(m) == end) {
                let mut longer = chain.clone();
                longer.push(m);
                next.push(longer);
            }
        }
        chains.push(next);
    }
    let index: Vec<HashMap<Vec<Mor>, usize>> = chains
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
        .collect();
    // object at position j of a chain
    let vertex_at = |chain: &[Mor], j: usize| if j == 0 { c.dom(chain[0]) } else { c.cod(chain[j - 1]) };

    let mut levels = Vec::with_capacity(truncation + 1);
    for n in 0..=truncation {
        let names = if n == 0 {
            c.objects().map(|x| c.object_name(x).to_string()).collect()
        } else {
            chains[n]
                .iter()
                .map(|ch| ch.iter().map(|&m| c.morphism_name(m)).collect::<Vec<_>>().join("|"))
                .collect()
        };
        let faces = if n == 0 {
            Vec::new()
        } else if n == 1 {
            vec![
                chains[1].iter().map(|ch| c.cod(ch[0])).collect(),
                chains[1].iter().map(|ch| c.dom(ch[0])).collect(),
            ]
        } else {
            (0..=n)
                .map(|i| {
                    chains[n]
                        .iter()
                        .map(|ch| {
                            let face: Vec<Mor> = if i == 0 {
                                ch[1..].to_vec()
                            } else if i == n {
                                ch[..n - 1].to_vec()
                            } else {
                                let mut f = ch[..i - 1].to_vec();
                                f.push(c.comp(ch[i], ch[i - 1]));
                                f.extend_from_slice(&ch[i + 1..]);
                                f
                            };
                            index[n - 1][&face]
                        })
                        .collect()
                })
                .collect()
        };
        let degeneracies = if n == truncation {
            Vec::new()
        } else if n == 0 {
            vec![c.objects().map(|x| index[1][&vec![c.id(x)]]).collect()]
        } else {
            (0..=n)
                .map(|j| {
                    chains[n]
                        .iter()
                        .map(|ch| {
                            let mut longer = ch.clone();
                            longer.insert(j, c.id(vertex_at(ch, j)));
                            index[n + 1][&longer]
                        })
                        .collect()
                })
                .collect()
        };
        levels.push(LevelData { names, faces, degeneracies });
    }
    let set = SimplicialSet::new(levels).expect("nerve tables are well formed");
    Nerve { set, chains, index }
}

/// `N•F : N•C → N•D`, levelwise image of chains.
pub fn nerve_map(f: &FinFunctor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    let top = source.set.truncation();
    let mut levels = vec![f.object_table().to_vec()];
    for n in 1..=top {
        let level = source.chains[n]
            .iter()
            .map(|ch| {
                let image: Vec<Mor> = ch.iter().map(|&m| f.mor(m)).collect();
                target
                    .chain_index(&image)
                    .ok_or_else(|| Error::invalid("nerve map", "image of a chain is not composable"))
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(level);
    }
    SimplicialMap::new(Arc::new(source.set.clone()), Arc::new(target.set.clone()), levels)
}

/// Reads a functor off a simplicial map between nerves (objects from
/// vertices, morphisms from edges).
pub fn functor_from_nerve_map(
    map: &SimplicialMap,
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    target: &Nerve,
) -> Result<FinFunctor> {
    if map.source().truncation() < 1 {
        return Err(Error::invalid("nerve map", "needs the 1-skeleton"));
    }
    let objects = map.level(0).to_vec();
    let morphisms = c.morphisms().map(|m| target.chains[1][map.apply(1, m)][0]).collect();
    FinFunctor::new(c.clone(), d.clone(), objects, morphisms)
}
