//! Hamiltonian paths in dense graphs given by an adjacency predicate.

/// Exhaustive search limit for the subset DP.
pub const DP_LIMIT: usize = 16;

/// Hamiltonian path on `0..n` by extension and cycle rotation.
///
/// Always succeeds when the minimum degree is at least `n/2`; otherwise it
/// may give up, and small inputs then fall back to [`hamiltonian_path_dp`].
pub fn hamiltonian_path(n: usize, adj: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    if n == 0 {
        return Some(Vec::new());
    }
    rotation_extension(n, &adj).or_else(|| (n <= DP_LIMIT).then(|| hamiltonian_path_dp(n, &adj)).flatten())
}

fn rotation_extension(n: usize, adj: &impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let mut on_path = vec![false; n];
    let mut path = vec![0usize];
    on_path[0] = true;
    loop {
        extend_both_ends(n, adj, &mut path, &mut on_path);
        if path.len() == n {
            return Some(path);
        }
        let cycle = close_cycle(&path, adj)?;
        // the cycle spans the path; leave it through an outside neighbour
        let (j, outside) = cycle
            .iter()
            .enumerate()
            .find_map(|(j, &c)| (0..n).find(|&w| !on_path[w] && adj(c, w)).map(|w| (j, w)))?;
        let k = cycle.len();
        path = std::iter::once(outside).chain((0..k).map(|i| cycle[(j + i) % k])).collect();
        on_path[outside] = true;
    }
}

fn extend_both_ends(n: usize, adj: &impl Fn(usize, usize) -> bool, path: &mut Vec<usize>, on_path: &mut [bool]) {
    loop {
        let end = *path.last().expect("path is non-empty");
        if let Some(w) = (0..n).find(|&w| !on_path[w] && adj(end, w)) {
            on_path[w] = true;
            path.push(w);
            continue;
        }
        let start = path[0];
        if let Some(w) = (0..n).find(|&w| !on_path[w] && adj(start, w)) {
            on_path[w] = true;
            path.insert(0, w);
            continue;
        }
        return;
    }
}

/// A cycle through every vertex of a maximal path, from a crossing pair of chords.
fn close_cycle(path: &[usize], adj: &impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let k = path.len();
    let (first, last) = (path[0], path[k - 1]);
    if k <= 2 {
        return Some(path.to_vec());
    }
    if adj(first, last) {
        return Some(path.to_vec());
    }
    let i = (0..k - 1).find(|&i| adj(first, path[i + 1]) && adj(path[i], last))?;
    let mut cycle: Vec<usize> = path[..=i].to_vec();
    cycle.extend(path[i + 1..].iter().rev());
    Some(cycle)
}

/// Exact Hamiltonian path search over subsets, starting from the least feasible endpoint.
pub fn hamiltonian_path_dp(n: usize, adj: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    assert!(n <= 24, "subset DP limited to 24 vertices");
    if n == 0 {
        return Some(Vec::new());
    }
    let full = (1usize << n) - 1;
    // reach[S] = set of v such that some path covers S and ends at v
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for s in 1..=full {
        let mut ends = reach[s];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            for w in 0..n {
                if s >> w & 1 == 0 && adj(v, w) {
                    reach[s | 1 << w] |= 1 << w;
                }
            }
        }
    }
    if reach[full] == 0 {
        return None;
    }
    let mut end = reach[full].trailing_zeros() as usize;
    let mut s = full;
    let mut path = vec![end];
    while s != 1 << end {
        let rest = s & !(1 << end);
        let prev = (0..n).find(|&u| reach[rest] >> u & 1 == 1 && adj(u, end))?;
        path.push(prev);
        s = rest;
        end = prev;
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_path(n: usize, p: &[usize], adj: impl Fn(usize, usize) -> bool) -> bool {
        let mut seen = vec![false; n];
        p.len() == n && p.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) && p.windows(2).all(|w| adj(w[0], w[1]))
    }

    #[test]
    fn dense_random_graphs() {
        let mut x = 5u64;
        for n in [8usize, 13, 40, 101] {
            let mut m = vec![vec![false; n]; n];
            for u in 0..n {
                for v in u + 1..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let e = (x >> 33) % 10 < 7;
                    m[u][v] = e;
                    m[v][u] = e;
                }
            }
            // enforce Dirac by adding edges to low-degree vertices
            for u in 0..n {
                let mut v = 0;
                while m[u].iter().filter(|&&b| b).count() * 2 < n {
                    if v != u {
                        m[u][v] = true;
                        m[v][u] = true;
                    }
                    v += 1;
                }
            }
            let adj = |a: usize, b: usize| m[a][b];
            let p = rotation_extension(n, &adj).expect("Dirac graph");
            assert!(is_path(n, &p, adj));
        }
    }

    #[test]
    fn dp_finds_path_or_none() {
        let star = |a: usize, b: usize| (a == 0) != (b == 0);
        assert!(hamiltonian_path_dp(4, star).is_none());
        let line = |a: usize, b: usize| a.abs_diff(b) == 1;
        assert_eq!(hamiltonian_path_dp(4, line), Some(vec![0, 1, 2, 3]));
        assert!(hamiltonian_path(5, line).is_some());
    }
}
