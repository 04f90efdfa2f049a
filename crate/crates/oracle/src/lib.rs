//! Brute-force reference computations on adjacency matrices.
//!
//! Everything here is deliberately naive and shares no code with the main
//! library, so the tests can compare the two.

pub type Matrix = Vec<Vec<bool>>;

/// Adjacency matrix from an edge list.
pub fn matrix(n: usize, edges: &[(usize, usize)]) -> Matrix {
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in edges {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn preserves(a: &Matrix, p: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|u| (0..n).all(|v| a[u][v] == a[p[u]][p[v]]))
}

/// Number of automorphisms, by checking every permutation.
pub fn automorphism_count_naive(a: &Matrix) -> u64 {
    permutations(a.len()).iter().filter(|p| preserves(a, p)).count() as u64
}

/// Colour-preserving automorphisms, found by backtracking on partial maps.
pub fn automorphisms_colored(a: &Matrix, colors: &[usize]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &Matrix,
        colors: &[usize],
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = a.len();
        if v == n {
            out.push(image.clone());
            return;
        }
        for w in 0..n {
            if used[w] || colors[w] != colors[v] || a[v][v] != a[w][w] {
                continue;
            }
            if (0..v).any(|u| a[u][v] != a[image[u]][w]) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            go(a, colors, v + 1, image, used, out);
            used[w] = false;
        }
        image[v] = usize::MAX;
    }
    go(a, colors, 0, &mut image, &mut used, &mut out);
    out
}

/// Number of automorphisms by backtracking; usable up to a few dozen vertices
/// when the group is small.
pub fn automorphism_count(a: &Matrix) -> u64 {
    automorphisms_colored(a, &vec![0; a.len()]).len() as u64
}

/// Whether some pair `(α, β)` with `α ≠ β` satisfies
/// `a[u][v] == a[α(u)][β(v)]` for all `u, v`. Enumerates every `α`.
pub fn has_nontrivial_two_fold(a: &Matrix) -> bool {
    let n = a.len();
    permutations(n).iter().any(|alpha| {
        // the column of v must reappear, with rows moved by α, as the column of β(v)
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..n).filter(|&w| (0..n).all(|u| a[u][v] == a[alpha[u]][w])).collect())
            .collect();
        let mut beta = vec![usize::MAX; n];
        let mut used = vec![false; n];
        any_beta_differs(&candidates, alpha, 0, &mut beta, &mut used)
    })
}

fn any_beta_differs(
    candidates: &[Vec<usize>],
    alpha: &[usize],
    v: usize,
    beta: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if v == candidates.len() {
        return beta.as_slice() != alpha;
    }
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        used[w] = true;
        beta[v] = w;
        let found = any_beta_differs(candidates, alpha, v + 1, beta, used);
        used[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// Checks the two-fold condition for a given pair.
pub fn is_two_fold(a: &Matrix, alpha: &[usize], beta: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|u| (0..n).all(|v| a[u][v] == a[alpha[u]][beta[v]]))
}

/// Whether some tuple `(α_i)` indexed by the vertices of `s` with two
/// distinct entries satisfies `a[u][v] == a[α_i(u)][α_j(v)]` for every edge
/// `{i, j}` of `s`. Vertices of `s` without edges are unconstrained and are
/// left out of the comparison.
pub fn has_nondiagonal_sigma_automorphism(a: &Matrix, s: &Matrix) -> bool {
    let perms = permutations(a.len());
    let m = s.len();
    let mut choice: Vec<usize> = vec![usize::MAX; m];
    fn go(a: &Matrix, s: &Matrix, perms: &[Vec<usize>], i: usize, choice: &mut Vec<usize>) -> bool {
        let m = s.len();
        let n = a.len();
        if i == m {
            let first = choice.iter().find(|&&c| c != usize::MAX);
            return choice.iter().any(|&c| c != usize::MAX && Some(&c) != first);
        }
        if !(0..m).any(|j| s[i][j]) {
            return go(a, s, perms, i + 1, choice);
        }
        for (k, p) in perms.iter().enumerate() {
            let ok = (0..i).filter(|&j| s[i][j]).all(|j| {
                let q = &perms[choice[j]];
                (0..n).all(|u| (0..n).all(|v| a[u][v] == a[q[u]][p[v]]))
            }) && (!s[i][i] || (0..n).all(|u| (0..n).all(|v| a[u][v] == a[p[u]][p[v]])));
            if !ok {
                continue;
            }
            choice[i] = k;
            if go(a, s, perms, i + 1, choice) {
                choice[i] = usize::MAX;
                return true;
            }
        }
        choice[i] = usize::MAX;
        false
    }
    go(a, s, &perms, 0, &mut choice)
}

/// Whether some bijection maps `a` onto `b`.
pub fn isomorphic(a: &Matrix, b: &Matrix) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let deg = |m: &Matrix, v: usize| m[v].iter().filter(|&&x| x).count();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Matrix, b: &Matrix, v: usize, image: &mut Vec<usize>, used: &mut Vec<bool>, deg: &dyn Fn(&Matrix, usize) -> usize) -> bool {
        let n = a.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || deg(a, v) != deg(b, w) || a[v][v] != b[w][w] {
                continue;
            }
            if (0..v).any(|u| a[u][v] != b[image[u]][w]) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if go(a, b, v + 1, image, used, deg) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(a, b, 0, &mut image, &mut used, &deg)
}

/// Direct product by definition, indexing `(u, x)` as `u * |b| + x`.
pub fn direct_product(a: &Matrix, b: &Matrix) -> Matrix {
    let (n1, n2) = (a.len(), b.len());
    let mut m = vec![vec![false; n1 * n2]; n1 * n2];
    for u in 0..n1 {
        for x in 0..n2 {
            for v in 0..n1 {
                for y in 0..n2 {
                    m[u * n2 + x][v * n2 + y] = a[u][v] && b[x][y];
                }
            }
        }
    }
    m
}

/// Component count by depth-first search.
pub fn component_count(a: &Matrix) -> usize {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if a[x][y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Odd cycle detection by BFS layering: a graph has an odd cycle iff some
/// edge joins two vertices on the same layer of a BFS tree.
pub fn has_odd_cycle(a: &Matrix) -> bool {
    let n = a.len();
    let mut layer = vec![usize::MAX; n];
    for s in 0..n {
        if layer[s] != usize::MAX {
            continue;
        }
        layer[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if a[x][y] && layer[y] == usize::MAX {
                    layer[y] = layer[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    (0..n).any(|u| (0..n).any(|v| a[u][v] && layer[u] == layer[v]))
}

/// Two distinct vertices with identical rows.
pub fn has_twins(a: &Matrix) -> bool {
    let n = a.len();
    (0..n).any(|u| (u + 1..n).any(|v| a[u] == a[v]))
}

/// Every graph on `n` labeled vertices (2^(n choose 2) of them).
pub fn all_labeled_graphs(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            matrix(n, &edges)
        })
        .collect()
}

/// Number of isomorphism classes among the labeled graphs on `n` vertices,
/// found by pairwise brute-force isomorphism against class representatives
/// bucketed by degree sequence.
pub fn isomorphism_class_count(n: usize) -> usize {
    let mut buckets: std::collections::HashMap<Vec<usize>, Vec<Matrix>> = Default::default();
    for g in all_labeled_graphs(n) {
        let mut degs: Vec<usize> = g.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
        degs.sort_unstable();
        let reps = buckets.entry(degs).or_default();
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    buckets.values().map(Vec::len).sum()
}

/// Every graph with optional loops on `n` labeled vertices.
pub fn all_looped_graphs(n: usize) -> Vec<Matrix> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..=v).map(move |u| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let mut m = vec![vec![false; n]; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m[u][v] = true;
                    m[v][u] = true;
                }
            }
            m
        })
        .collect()
}

/// Looped graphs `D` on `d` vertices, one per isomorphism class, such that
/// `a ≅ A × D` for some looped `A`. Exhaustive over both factors.
pub fn looped_divisors(a: &Matrix, d: usize) -> Vec<Matrix> {
    let n = a.len();
    if d == 0 || n % d != 0 {
        return Vec::new();
    }
    let cofactors = all_looped_graphs(n / d);
    let mut found: Vec<Matrix> = Vec::new();
    for delta in all_looped_graphs(d) {
        if found.iter().any(|f| isomorphic(f, &delta)) {
            continue;
        }
        if cofactors.iter().any(|c| isomorphic(&direct_product(c, &delta), a)) {
            found.push(delta);
        }
    }
    found
}

/// Whether `a` and `b` share a looped factor of order between 2 and `max_d`.
pub fn share_factor(a: &Matrix, b: &Matrix, max_d: usize) -> bool {
    (2..=max_d).any(|d| {
        let da = looped_divisors(a, d);
        let db = looped_divisors(b, d);
        da.iter().any(|x| db.iter().any(|y| isomorphic(x, y)))
    })
}
