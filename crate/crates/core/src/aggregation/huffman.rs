use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::{AggregationResult, Guarantee, Partition};
use crate::dist::Dist;
use crate::error::Result;
use crate::reduction::check_m;

/// One Huffman merge. Node ids below `n` are input positions; the `k`-th
/// merge creates node `n + k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergeStep {
    pub a: usize,
    pub b: usize,
    pub mass_a: f64,
    pub mass_b: f64,
    pub merged: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuffmanTrace {
    pub merge_steps: Vec<MergeStep>,
    /// Length of the prefix of the output made of untouched input symbols.
    pub i_q: usize,
}

#[derive(Debug, Clone, Copy)]
struct Item {
    mass: f64,
    node: usize,
    /// Input position for leaves, creation step for merged nodes.
    tag: usize,
    merged: bool,
}

impl Item {
    /// Position in the non-increasing output order: heavier first, then
    /// input symbols before merged nodes, then by input position or age.
    fn output_cmp(&self, other: &Self) -> Ordering {
        other
            .mass
            .total_cmp(&self.mass)
            .then(self.merged.cmp(&other.merged))
            .then(self.tag.cmp(&other.tag))
    }
}

/// Pop order for the merge queue: lightest first; on equal mass a merged node
/// sits to the right of equal input symbols (newest merge rightmost), and
/// input symbols go by lower position.
#[derive(Debug, Clone, Copy)]
struct PopKey(Item);

impl PartialEq for PopKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for PopKey {}
impl PartialOrd for PopKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PopKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        a.mass
            .total_cmp(&b.mass)
            .then(b.merged.cmp(&a.merged))
            .then(match a.merged {
                true => b.tag.cmp(&a.tag),
                false => a.tag.cmp(&b.tag),
            })
    }
}

/// Runs `n - m` Huffman merges on `p` and returns the resulting aggregation.
///
/// The output entropy is within `alpha()` of `H(R_m(p))`, hence within
/// `alpha()` of the best aggregation. Runs in `O(n log n)`.
pub fn huffman_max_aggregation(p: &Dist, m: usize) -> Result<(AggregationResult, HuffmanTrace)> {
    let n = p.len();
    check_m(m, n)?;

    // children[k] for merged node n + k
    let mut children: Vec<(usize, usize)> = Vec::with_capacity(n - m);
    let mut steps = Vec::with_capacity(n - m);
    let mut heap: BinaryHeap<Reverse<PopKey>> = (0..n)
        .map(|i| {
            Reverse(PopKey(Item {
                mass: p.mass_at(i),
                node: i,
                tag: i,
                merged: false,
            }))
        })
        .collect();

    for k in 0..n - m {
        let Reverse(PopKey(x)) = heap.pop().expect("heap holds more than m items");
        let Reverse(PopKey(y)) = heap.pop().expect("heap holds more than m items");
        let merged = x.mass + y.mass;
        children.push((x.node, y.node));
        steps.push(MergeStep {
            a: x.node,
            b: y.node,
            mass_a: x.mass,
            mass_b: y.mass,
            merged,
        });
        heap.push(Reverse(PopKey(Item {
            mass: merged,
            node: n + k,
            tag: k,
            merged: true,
        })));
    }

    let mut items: Vec<Item> = heap.into_iter().map(|Reverse(PopKey(it))| it).collect();
    items.sort_by(Item::output_cmp);
    let i_q = items.iter().take_while(|it| !it.merged).count();

    let blocks: Vec<Vec<usize>> = items
        .iter()
        .map(|it| {
            let mut leaves = Vec::new();
            let mut stack = vec![it.node];
            while let Some(v) = stack.pop() {
                if v < n {
                    leaves.push(v);
                } else {
                    let (a, b) = children[v - n];
                    stack.push(a);
                    stack.push(b);
                }
            }
            leaves.sort_unstable();
            leaves
        })
        .collect();
    let sums: Vec<f64> = items.iter().map(|it| it.mass).collect();
    let result =
        AggregationResult::from_aligned(Partition::new(blocks)?, &sums, Guarantee::AdditiveAlpha)?;
    Ok((
        result,
        HuffmanTrace {
            merge_steps: steps,
            i_q,
        },
    ))
}
