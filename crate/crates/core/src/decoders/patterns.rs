use alloc::vec::Vec;

/// Error patterns over reliability ranks in nondecreasing logistic weight.
///
/// A pattern is a strictly increasing list of 1-based ranks; its weight is
/// the sum of those ranks, i.e. a partition of the weight into distinct
/// parts no larger than `n`. Within one weight, patterns with fewer parts
/// come first, then ascending lexicographic order. The empty pattern is
/// emitted first.
#[derive(Debug, Clone)]
pub struct LogisticPatterns {
    n: usize,
    weight: usize,
    parts: Vec<usize>,
    started: bool,
    done: bool,
}

impl LogisticPatterns {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            weight: 0,
            parts: Vec::new(),
            started: false,
            done: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of the pattern last returned by [`LogisticPatterns::next_pattern`].
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Advances and returns the next pattern, or `None` once all `2^n`
    /// subsets have been emitted.
    pub fn next_pattern(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.parts);
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        Some(&self.parts)
    }

    fn max_weight(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    fn advance(&mut self) -> bool {
        if self.successor_same_shape() {
            return true;
        }
        let mut m = self.parts.len() + 1;
        let mut w = self.weight;
        loop {
            while m <= self.n && m * (m + 1) / 2 <= w {
                self.parts.clear();
                if fill_smallest(&mut self.parts, 0, m, w, self.n) {
                    self.weight = w;
                    return true;
                }
                m += 1;
            }
            w += 1;
            if w > self.max_weight() {
                return false;
            }
            m = 1;
        }
    }

    // Lexicographic successor among patterns with the same weight and size.
    fn successor_same_shape(&mut self) -> bool {
        let m = self.parts.len();
        if m < 2 {
            return false;
        }
        let mut prefix_sum: usize = self.parts[..m - 1].iter().sum();
        for i in (0..m - 1).rev() {
            prefix_sum -= self.parts[i];
            let rest = self.weight - prefix_sum;
            let t = m - i;
            let v = self.parts[i] + 1;
            if v < rest && feasible(v, t - 1, rest - v, self.n) {
                self.parts.truncate(i);
                self.parts.push(v);
                fill_smallest(&mut self.parts, v, t - 1, rest - v, self.n);
                return true;
            }
        }
        false
    }
}

/// Appends the lexicographically smallest `count` strictly increasing parts,
/// all greater than `above` and at most `n`, summing to `total`. Leaves
/// `parts` unchanged and returns false if none exists.
fn fill_smallest(parts: &mut Vec<usize>, above: usize, count: usize, total: usize, n: usize) -> bool {
    if !feasible(above, count, total, n) {
        return false;
    }
    let mut prev = above;
    let mut remaining = total;
    for t in (1..=count).rev() {
        let v = if t == 1 {
            remaining
        } else {
            // largest sum the other t-1 parts can reach
            let max_rest = (t - 1) * n - (t - 1) * (t - 2) / 2;
            (prev + 1).max(remaining.saturating_sub(max_rest))
        };
        parts.push(v);
        remaining -= v;
        prev = v;
    }
    true
}

fn feasible(above: usize, count: usize, total: usize, n: usize) -> bool {
    if count == 0 {
        return total == 0;
    }
    if above + count > n {
        return false;
    }
    let min = count * above + count * (count + 1) / 2;
    let max = count * n - count * (count - 1) / 2;
    (min..=max).contains(&total)
}

impl Iterator for LogisticPatterns {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_pattern().map(<[usize]>::to_vec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_force(n: usize) -> Vec<Vec<usize>> {
        let mut all: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
        all.sort_by(|a: &Vec<usize>, b: &Vec<usize>| {
            let wa: usize = a.iter().sum();
            let wb: usize = b.iter().sum();
            (wa, a.len(), a).cmp(&(wb, b.len(), b))
        });
        all
    }

    #[test]
    fn first_patterns_for_n_3() {
        let got: Vec<Vec<usize>> = LogisticPatterns::new(3).take(7).collect();
        let want = vec![vec![], vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]];
        assert_eq!(got, want);
    }

    #[test]
    fn whole_stream_matches_sorted_subsets() {
        for n in 1..=10 {
            let got: Vec<Vec<usize>> = LogisticPatterns::new(n).collect();
            assert_eq!(got, brute_force(n), "n={n}");
        }
    }

    #[test]
    fn weight_tracks_pattern() {
        let mut p = LogisticPatterns::new(6);
        let mut last = 0;
        while let Some(pat) = p.next_pattern() {
            let w: usize = pat.iter().sum();
            assert!(w >= last);
            last = w;
            assert_eq!(p.weight(), w);
        }
    }

    #[test]
    fn long_blocks_start_correctly() {
        let got: Vec<Vec<usize>> = LogisticPatterns::new(128).take(10).collect();
        let want = vec![
            vec![],
            vec![1],
            vec![2],
            vec![3],
            vec![1, 2],
            vec![4],
            vec![1, 3],
            vec![5],
            vec![1, 4],
            vec![2, 3],
        ];
        assert_eq!(got, want);
    }
}
