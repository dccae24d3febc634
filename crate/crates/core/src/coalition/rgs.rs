//! Restricted growth strings: `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
//! Each set partition of `0..n` has exactly one such encoding.

/// Iterates all restricted growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    labels: Vec<usize>,
    // prefix_max[i] = max(labels[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: n == 0,
        }
    }

    /// Current string; valid after a successful [`advance`](Self::advance).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn part_count(&self) -> usize {
        self.prefix_max.last().map_or(0, |m| m + 1)
    }

    /// Moves to the next string. Returns `false` once all are exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.labels.len();
        let mut i = n - 1;
        while i > 0 {
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
            i -= 1;
        }
        self.done = true;
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().then(|| self.labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate().skip(1) {
            assert_eq!(RestrictedGrowth::new(n).count(), b, "n = {n}");
        }
        assert_eq!(RestrictedGrowth::new(0).count(), 0);
    }

    #[test]
    fn order_is_lexicographic() {
        let all: Vec<Vec<usize>> = RestrictedGrowth::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn part_count_tracks_maximum() {
        let mut it = RestrictedGrowth::new(4);
        let mut seen = Vec::new();
        while it.advance() {
            let expected = it.labels().iter().max().unwrap() + 1;
            assert_eq!(it.part_count(), expected);
            seen.push(expected);
        }
        assert_eq!(seen.iter().filter(|&&k| k == 4).count(), 1);
    }
}
