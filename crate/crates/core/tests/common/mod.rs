//! Independent oracles for cross-checking the library.
//!
//! Everything here is deliberately written from scratch against the
//! documented edge ordering (horizontal edges row-major, then vertical
//! edges row-major) and shares no code with the implementation it checks.

/// Edge list of a `rows x cols` grid in canonical order, as node pairs.
pub fn edge_list(rows: usize, cols: usize) -> Vec<((usize, usize), (usize, usize))> {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols - 1 {
            edges.push(((r, c), (r, c + 1)));
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            edges.push(((r, c), (r + 1, c)));
        }
    }
    edges
}

/// Walk-based validity oracle: starting at `source`, repeatedly take the
/// unique unused active incident edge; the state is a valid path iff the
/// walk has exactly one continuation at every step, stops at `dest`, and
/// consumes every active edge.
pub fn walk_oracle_valid(
    rows: usize,
    cols: usize,
    bits: &[bool],
    source: (usize, usize),
    dest: (usize, usize),
) -> bool {
    let edges = edge_list(rows, cols);
    assert_eq!(edges.len(), bits.len());
    let active_count = bits.iter().filter(|&&b| b).count();
    if source == dest {
        return active_count == 0;
    }
    let mut used = vec![false; bits.len()];
    let mut consumed = 0usize;
    let mut at = source;
    loop {
        let options: Vec<usize> = (0..bits.len())
            .filter(|&i| bits[i] && !used[i] && (edges[i].0 == at || edges[i].1 == at))
            .collect();
        if at == dest {
            return options.is_empty() && consumed == active_count;
        }
        if options.len() != 1 {
            return false;
        }
        let e = options[0];
        used[e] = true;
        consumed += 1;
        at = if edges[e].0 == at { edges[e].1 } else { edges[e].0 };
    }
}

/// Brute-force path enumeration by filtering every edge subset through the
/// walk oracle. Only sensible for small grids; guarded at 16 edges.
pub fn oracle_enumerate_paths(
    rows: usize,
    cols: usize,
    source: (usize, usize),
    dest: (usize, usize),
) -> std::collections::BTreeSet<Vec<bool>> {
    let edge_count = edge_list(rows, cols).len();
    assert!(edge_count <= 16, "subset oracle is for small grids only");
    let mut paths = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << edge_count) {
        let bits: Vec<bool> = (0..edge_count).map(|i| (mask >> i) & 1 == 1).collect();
        if walk_oracle_valid(rows, cols, &bits, source, dest) {
            paths.insert(bits);
        }
    }
    paths
}
