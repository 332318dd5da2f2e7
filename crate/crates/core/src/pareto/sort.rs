use super::dominance::{compare, Dominance};
use std::cmp::Ordering;

/// Front membership of a population. Ranks are 1-based; front 1 is the
/// non-dominated subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontPartition {
    pub ranks: Vec<usize>,
    pub fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    fn from_ranks(ranks: Vec<usize>) -> Self {
        let count = ranks.iter().copied().max().unwrap_or(0);
        let mut fronts = vec![Vec::new(); count];
        for (i, &r) in ranks.iter().enumerate() {
            fronts[r - 1].push(i);
        }
        Self { ranks, fronts }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }
}

/// Fast non-dominated sort (Deb et al., 2002). `O(m N^2)` comparisons, one
/// per unordered pair.
pub fn nondominated_sort<T: AsRef<[f64]>>(points: &[T]) -> FrontPartition {
    let n = points.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];

    for i in 0..n {
        let p = points[i].as_ref();
        for j in (i + 1)..n {
            match compare(p, points[j].as_ref()) {
                Dominance::Dominates => {
                    dominates_list[i].push(j);
                    dominated_by_count[j] += 1;
                }
                Dominance::DominatedBy => {
                    dominates_list[j].push(i);
                    dominated_by_count[i] += 1;
                }
                Dominance::Neither => {}
            }
        }
    }

    let mut ranks = vec![0usize; n];
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    let mut rank = 1;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            ranks[p] = rank;
            for &q in &dominates_list[p] {
                dominated_by_count[q] -= 1;
                if dominated_by_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
        rank += 1;
    }
    FrontPartition { ranks, fronts }
}

/// Bi-objective non-dominated sort in `O(N log N)`.
///
/// Points are swept in decreasing order of the first objective. Within a
/// front the most recently placed member carries the largest second
/// objective, and "dominated by front f" is monotone in f, so each point's
/// front is found by binary search.
pub fn nondominated_sort_2d<T: AsRef<[f64]>>(points: &[T]) -> FrontPartition {
    let n = points.len();
    let xy = |i: usize| {
        let p = points[i].as_ref();
        debug_assert_eq!(p.len(), 2);
        (p[0], p[1])
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (ax, ay) = xy(a);
        let (bx, by) = xy(b);
        bx.partial_cmp(&ax).unwrap_or(Ordering::Equal).then(by.partial_cmp(&ay).unwrap_or(Ordering::Equal))
    });

    let mut last: Vec<(f64, f64)> = Vec::new();
    let mut ranks = vec![0usize; n];
    for &i in &order {
        let (x, y) = xy(i);
        // Every previously placed point has first objective >= x.
        let dominated = |&(lx, ly): &(f64, f64)| ly >= y && (lx, ly) != (x, y);
        let front = last.partition_point(dominated);
        if front == last.len() {
            last.push((x, y));
        } else {
            last[front] = (x, y);
        }
        ranks[i] = front + 1;
    }
    FrontPartition::from_ranks(ranks)
}
