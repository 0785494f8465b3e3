use alloc::vec::Vec;
use core::cmp::Ordering;

use super::block::{DecodeOutcome, SoftBlock};
use super::orbgrand::apply_pattern;
use super::DecoderConfig;
use crate::codes::BinaryCode;

const NONE: u32 = u32::MAX;
const ARITY: usize = 2;

#[derive(Debug, Clone, Copy)]
struct Node {
    // the same set without its largest element
    parent: u32,
    last: u32,
    card: u32,
    penalty: f64,
}

// Sort keys live in the heap itself so sifting does not chase node
// indices through the arena.
#[derive(Debug, Clone, Copy)]
struct Entry {
    penalty: f64,
    card: u32,
    id: u32,
}

/// Best-first stream of rank patterns in nondecreasing penalty
/// `Σ_{r ∈ S} a_r`, where `a` holds the reliabilities `|llr|` sorted
/// ascending. Equal penalties are ordered by size, then lexicographically.
///
/// Each popped set `S` with largest element `j < n` spawns `S ∪ {j+1}` and
/// `(S ∖ {j}) ∪ {j+1}`; the empty set spawns `{1}` only. Every subset is
/// reached exactly once and children never precede their parent, so the
/// pop order is the sorted order.
#[derive(Debug, Clone)]
pub struct LikelihoodPatterns<'a> {
    rel: &'a [f64],
    nodes: Vec<Node>,
    heap: Vec<Entry>,
    // Optional per-rank syndrome columns; when set, `syn[id]` tracks the
    // syndrome of set `id` so a membership test needs no chain walk.
    cols: &'a [u128],
    syn: Vec<u128>,
}

impl<'a> LikelihoodPatterns<'a> {
    /// `rel` must be nondecreasing and nonnegative.
    pub fn new(rel: &'a [f64]) -> Self {
        debug_assert!(rel.windows(2).all(|w| w[0] <= w[1]));
        Self {
            rel,
            nodes: alloc::vec![Node {
                parent: NONE,
                last: 0,
                card: 0,
                penalty: 0.0,
            }],
            heap: alloc::vec![Entry {
                penalty: 0.0,
                card: 0,
                id: 0,
            }],
            cols: &[],
            syn: Vec::new(),
        }
    }

    /// As [`LikelihoodPatterns::new`], also tracking `base ^ Σ cols[r-1]`
    /// for every set, readable through [`LikelihoodPatterns::syndrome`].
    pub fn with_syndromes(rel: &'a [f64], cols: &'a [u128], base: u128) -> Self {
        assert_eq!(rel.len(), cols.len(), "one column per rank");
        let mut s = Self::new(rel);
        s.cols = cols;
        s.syn.push(base);
        s
    }

    /// Syndrome of set `id`; only meaningful after
    /// [`LikelihoodPatterns::with_syndromes`].
    pub fn syndrome(&self, id: u32) -> u128 {
        self.syn[id as usize]
    }

    /// Pops the next set; returns its handle.
    pub fn next_set(&mut self) -> Option<u32> {
        let id = self.pop()?;
        let node = self.nodes[id as usize];
        let j = node.last as usize;
        let n = self.rel.len();
        let tracked = !self.cols.is_empty();
        if node.card == 0 {
            if n > 0 {
                if tracked {
                    self.syn.push(self.syn[id as usize] ^ self.cols[0]);
                }
                self.push(Node {
                    parent: id,
                    last: 1,
                    card: 1,
                    penalty: self.rel[0],
                });
            }
        } else if j < n {
            let step = self.rel[j];
            if tracked {
                let own = self.syn[id as usize] ^ self.cols[j];
                self.syn.push(own);
                self.syn.push(own ^ self.cols[j - 1]);
            }
            self.push(Node {
                parent: id,
                last: j as u32 + 1,
                card: node.card + 1,
                penalty: node.penalty + step,
            });
            self.push(Node {
                parent: node.parent,
                last: j as u32 + 1,
                card: node.card,
                penalty: node.penalty + (step - self.rel[j - 1]),
            });
        }
        Some(id)
    }

    pub fn penalty(&self, id: u32) -> f64 {
        self.nodes[id as usize].penalty
    }

    /// Writes the 1-based ranks of set `id` into `out` in ascending order.
    pub fn pattern_into(&self, id: u32, out: &mut Vec<usize>) {
        out.clear();
        let mut cur = id;
        while cur != NONE {
            let node = self.nodes[cur as usize];
            if node.card == 0 {
                break;
            }
            out.push(node.last as usize);
            cur = node.parent;
        }
        out.reverse();
    }

    fn cmp_entries(&self, a: &Entry, b: &Entry) -> Ordering {
        a.penalty.total_cmp(&b.penalty).then(a.card.cmp(&b.card)).then_with(|| {
            let (mut pa, mut pb) = (Vec::new(), Vec::new());
            self.pattern_into(a.id, &mut pa);
            self.pattern_into(b.id, &mut pb);
            pa.cmp(&pb)
        })
    }

    // 4-ary heap: a node's children share a cache line, which matters once
    // the frontier reaches millions of entries.
    fn push(&mut self, node: Node) {
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        let entry = Entry {
            penalty: node.penalty,
            card: node.card,
            id,
        };
        self.heap.push(entry);
        let mut i = self.heap.len() - 1;
        while i > 0 {
            let p = (i - 1) / ARITY;
            if self.cmp_entries(&entry, &self.heap[p]) == Ordering::Less {
                self.heap[i] = self.heap[p];
                i = p;
            } else {
                break;
            }
        }
        self.heap[i] = entry;
    }

    fn pop(&mut self) -> Option<u32> {
        let top = self.heap.first()?.id;
        let last = self.heap.pop().expect("heap is nonempty");
        let len = self.heap.len();
        if len == 0 {
            return Some(top);
        }
        let mut i = 0;
        loop {
            let first = ARITY * i + 1;
            if first >= len {
                break;
            }
            let mut c = first;
            for k in first + 1..(first + ARITY).min(len) {
                if self.cmp_entries(&self.heap[k], &self.heap[c]) == Ordering::Less {
                    c = k;
                }
            }
            if self.cmp_entries(&self.heap[c], &last) == Ordering::Less {
                self.heap[i] = self.heap[c];
                i = c;
            } else {
                break;
            }
        }
        self.heap[i] = last;
        Some(top)
    }
}

impl Iterator for LikelihoodPatterns<'_> {
    type Item = (Vec<usize>, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let id = self.next_set()?;
        let mut p = Vec::new();
        self.pattern_into(id, &mut p);
        Some((p, self.penalty(id)))
    }
}

/// Soft GRAND: tests patterns in exact likelihood order, so the first hit
/// is a maximum-likelihood codeword for the block's LLRs.
pub fn sgrand(block: &SoftBlock, code: &BinaryCode, cfg: &DecoderConfig) -> DecodeOutcome {
    assert_eq!(block.len(), code.n(), "block length must equal code length");
    let rank = block.rank();
    let rel: Vec<f64> = rank.iter().map(|&i| block.llr()[i].abs()).collect();
    let hard = block.hard();
    let cols: Vec<u128> = rank.iter().map(|&i| code.column(i)).collect();
    let mut search = LikelihoodPatterns::with_syndromes(&rel, &cols, code.syndrome(hard));
    let mut queries = 0u64;
    while queries < cfg.max_queries {
        let Some(id) = search.next_set() else {
            break;
        };
        queries += 1;
        if search.syndrome(id) == 0 {
            let mut pattern = Vec::new();
            search.pattern_into(id, &mut pattern);
            return DecodeOutcome::found(apply_pattern(hard, rank, &pattern), queries);
        }
    }
    DecodeOutcome::gave_up(hard, queries)
}
