use std::collections::HashMap;

use crate::linfty::GradedBasis;

use super::word::{word_degree, word_weight, Word};

/// Canonical words of bounded weight and degree, sorted by `(degree, word)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSpan {
    pub max_weight: usize,
    pub max_degree: usize,
    words: Vec<Word>,
    degrees: Vec<usize>,
    weights: Vec<usize>,
    index: HashMap<Word, usize>,
}

impl WordSpan {
    fn from_words(mut words: Vec<Word>, basis: &GradedBasis, leaf_weight: &[usize], w: usize, d: usize) -> Self {
        words.sort_by(|a, b| (word_degree(a, basis), a).cmp(&(word_degree(b, basis), b)));
        words.dedup();
        let degrees = words.iter().map(|x| word_degree(x, basis) as usize).collect();
        let weights = words.iter().map(|x| word_weight(x, leaf_weight)).collect();
        let index = words.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        WordSpan {
            max_weight: w,
            max_degree: d,
            words,
            degrees,
            weights,
            index,
        }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Indices of the words of degree `d`, in order.
    pub fn in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == d).collect()
    }
}

/// Options for [`enumerate_span`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct SpanShape {
    pub unary: bool,
    /// Drop words with a unary bracket of a generator (rewritten to `d v`).
    pub skip_unary_leaves: bool,
}

/// All canonical words over `basis` of weight `<= w` and degree in `0..=d`.
///
/// Unary brackets are included, so `[v]_1` appears for every generator of
/// positive degree; words of negative degree are dropped along with
/// everything containing them.
pub fn enumerate_words(basis: &GradedBasis, w: usize, d: usize) -> WordSpan {
    let zero = vec![0; basis.len()];
    enumerate_span(
        basis,
        &zero,
        w,
        d,
        SpanShape {
            unary: true,
            skip_unary_leaves: false,
        },
    )
}

pub(crate) fn enumerate_span(basis: &GradedBasis, leaf_weight: &[usize], w: usize, d: usize, shape: SpanShape) -> WordSpan {
    // Without unary nodes a node is at least as high as each child, so the
    // degree cap applies throughout. Unary chains need higher intermediates.
    let cap = if shape.unary {
        (w + 1) * (basis.max_degree() + 1) + d
    } else {
        d
    } as isize;
    let mut all: Vec<(Word, usize, isize)> = Vec::new();
    for level in 0..=w {
        let mut fresh: Vec<Word> = (0..basis.len())
            .filter(|&i| leaf_weight[i] == level && (basis.degree(i) as isize) <= cap)
            .map(Word::Leaf)
            .collect();
        for k in 2..=level + 1 {
            let budget = level + 1 - k;
            let mut pool: Vec<&(Word, usize, isize)> = all.iter().filter(|x| x.1 <= budget).collect();
            pool.sort_by(|a, b| a.0.cmp(&b.0));
            let mut chosen = Vec::with_capacity(k);
            choose(&pool, 0, k, budget, cap - k as isize + 2, &mut chosen, &mut fresh);
        }
        if shape.unary {
            let mut q = 0;
            let mut layer: Vec<Word> = fresh.clone();
            while q < layer.len() {
                let x = layer[q].clone();
                q += 1;
                if shape.skip_unary_leaves && x.is_leaf() {
                    continue;
                }
                if word_degree(&x, basis) >= 1 {
                    layer.push(Word::Node(vec![x]));
                }
            }
            fresh = layer;
        }
        for x in fresh {
            let deg = word_degree(&x, basis);
            all.push((x, level, deg));
        }
    }
    let words = all
        .into_iter()
        .filter(|x| x.2 >= 0 && x.2 as usize <= d)
        .map(|x| x.0)
        .collect();
    WordSpan::from_words(words, basis, leaf_weight, w, d)
}

/// Sorted multisets of `k` pool entries with weights summing to `budget`
/// and degrees summing to at most `deg_room`.
fn choose(
    pool: &[&(Word, usize, isize)],
    start: usize,
    k: usize,
    budget: usize,
    deg_room: isize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Word>,
) {
    if chosen.len() == k {
        if budget == 0 && deg_room >= 0 {
            out.push(Word::Node(chosen.iter().map(|&i| pool[i].0.clone()).collect()));
        }
        return;
    }
    for i in start..pool.len() {
        let (_, wt, dg) = pool[i];
        if *wt > budget || *dg > deg_room {
            continue;
        }
        // a repeated even child kills the node
        if chosen.last() == Some(&i) && dg % 2 == 0 {
            continue;
        }
        chosen.push(i);
        choose(pool, i, k, budget - wt, deg_room - dg, chosen, out);
        chosen.pop();
    }
}
