use std::collections::VecDeque;

use super::{Constants, PairMap};
use crate::error::{Error, Result};
use crate::geometry::{coset_enumerate, Enumeration, PairModel};
use crate::presentation::{Element, SubgroupSpec, Word};

/// The inclusion of a finite-index subgroup as a map of pairs, with its retraction.
#[derive(Clone, Debug)]
pub struct FiniteIndexPair {
    /// `(H, 𝒬)`, with `H` carrying the word metric of its generating words.
    pub sub: PairModel,
    /// `H → G`.
    pub f: PairMap,
    /// `G → H`, `g ↦ g·t⁻¹` for the representative `t` of the right coset `Hg`.
    pub r: PairMap,
    pub index: usize,
    /// Per entry of `𝒬`: the entry of `𝒫` and the double coset representative `t`
    /// with `Q = H ∩ tPt⁻¹`.
    pub origins: Vec<(usize, Word)>,
}

/// Builds `𝒬 = {H ∩ tPt⁻¹}` over double coset representatives `t ∈ H\G/P`, found as
/// orbits of `P` on the right cosets of `H`. The map `hQ ↦ htP` is a bijection
/// `H/𝒬 → G/𝒫`.
pub fn finite_index_pair(
    pair: &PairModel,
    h: &SubgroupSpec,
    radius_h: usize,
    radius_g: usize,
    max_cosets: usize,
) -> Result<FiniteIndexPair> {
    let table = match coset_enumerate(&pair.model, h, max_cosets) {
        Enumeration::Complete(t) => t,
        Enumeration::Overflow { reached, .. } => return Err(Error::Overflow(reached)),
    };
    let index = table.len();
    let model = &pair.model;
    let spec = model.spec();
    let word_element = |w: &Word| model.element(w);
    let id = model.identity();

    let mut qs: Vec<SubgroupSpec> = Vec::new();
    let mut origins: Vec<(usize, Word)> = Vec::new();
    // per entry i, per coset c: (index into qs, transversal word u with t·u reaching c)
    let mut orbit_of: Vec<Vec<(usize, Word)>> = Vec::new();
    for (i, p) in pair.collection.iter().enumerate() {
        let gens: Vec<Word> = p
            .generator_words
            .iter()
            .flat_map(|w| [w.clone(), w.inverse()])
            .collect();
        let mut slot: Vec<Option<(usize, Word)>> = vec![None; index];
        for start in 0..index {
            if slot[start].is_some() {
                continue;
            }
            let q = qs.len();
            let t = table.reps[start].clone();
            let mut orbit = vec![start];
            slot[start] = Some((q, Word::empty()));
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let u = slot[c].as_ref().expect("visited").1.clone();
                for g in &gens {
                    let d = table.trace(c, g).expect("complete table");
                    if slot[d].is_none() {
                        slot[d] = Some((q, u.concat(g).freely_reduced()));
                        orbit.push(d);
                        queue.push_back(d);
                    }
                }
            }
            // Schreier generators of the stabiliser of Ht, conjugated into H
            let mut words: Vec<Word> = Vec::new();
            let mut seen: Vec<Element> = Vec::new();
            for &c in &orbit {
                let u = &slot[c].as_ref().expect("visited").1;
                for g in &p.generator_words {
                    let d = table.trace(c, g).expect("complete table");
                    let v = &slot[d].as_ref().expect("visited").1;
                    let s = t.concat(u).concat(g).concat(&v.inverse()).concat(&t.inverse()).freely_reduced();
                    let e = word_element(&s);
                    if e != id && !seen.contains(&e) {
                        seen.push(e);
                        words.push(s);
                    }
                }
            }
            if words.is_empty() {
                words.push(Word::empty());
            }
            let multiplicity_index = qs.iter().filter(|s| s.generator_words == words).count();
            qs.push(SubgroupSpec {
                name: format!("{}@{}", p.name, spec.render_word(&t)),
                generator_words: words,
                multiplicity_index,
            });
            origins.push((i, t));
        }
        orbit_of.push(slot.into_iter().map(|s| s.expect("every coset lies in an orbit")).collect());
    }

    let sub = PairModel::from_model(model.regenerate(h.generator_words.clone())?, qs)?;
    let placeholder = Constants::integers(1, 0, 1)?;
    let coset_of = |g: &Element| table.trace(0, &model.word_of(g)).expect("complete table");

    let f = PairMap::tabulate(
        "inclusion",
        &sub,
        pair,
        radius_h,
        |g| Ok(g.clone()),
        |a| {
            let (i, t) = &origins[a.collection_index];
            Ok(pair.coset(*i, &model.mul(&a.representative, &word_element(t))))
        },
        placeholder,
    )?
    .measured()?;

    let r = PairMap::tabulate(
        "retraction",
        pair,
        &sub,
        radius_g,
        |g| {
            let t = word_element(&table.reps[coset_of(g)]);
            Ok(model.mul(g, &model.inverse(&t)))
        },
        |b| {
            let g = &b.representative;
            let (q, u) = &orbit_of[b.collection_index][coset_of(g)];
            let t = word_element(&origins[*q].1);
            let back = model.mul(&t, &word_element(u));
            Ok(sub.coset(*q, &model.mul(g, &model.inverse(&back))))
        },
        placeholder,
    )?
    .measured()?;

    Ok(FiniteIndexPair {
        sub,
        f,
        r,
        index,
        origins,
    })
}
