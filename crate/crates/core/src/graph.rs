//! Strongly connected components over explicit adjacency lists.

/// Tarjan's algorithm restricted to the vertices with `active[v]`.
/// Returns, per vertex, its component id (`usize::MAX` for inactive vertices)
/// and whether that component contains a cycle.
pub(crate) fn sccs(adj: &[Vec<usize>], active: &[bool]) -> (Vec<usize>, Vec<bool>) {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut cyclic = Vec::new();
    let mut stack = Vec::new();
    let mut counter = 0;

    for start in 0..n {
        if !active[start] || index[start] != usize::MAX {
            continue;
        }
        // (vertex, next child position)
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if !active[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = cyclic.len();
                    let mut size = 0;
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = id;
                        size += 1;
                        if w == v {
                            break;
                        }
                    }
                    let self_loop = adj[v].contains(&v);
                    cyclic.push(size > 1 || self_loop);
                }
            }
        }
    }
    (comp, cyclic)
}

/// Breadth-first path from `from` to `to` inside `allowed`, as the list of
/// vertices strictly after `from` up to and including `to`.
pub(crate) fn bfs_path(adj: &[Vec<usize>], allowed: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    seen[from] = true;
    let mut found = false;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !allowed[w] {
                continue;
            }
            if w == to {
                prev[w] = v;
                found = true;
                break;
            }
            if !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
        if found {
            break;
        }
    }
    if !found {
        return None;
    }
    let mut path = vec![to];
    let mut cur = prev[to];
    while cur != from {
        path.push(cur);
        cur = prev[cur];
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_cycles() {
        let adj = vec![vec![1], vec![0, 2], vec![2], vec![]];
        let (comp, cyclic) = sccs(&adj, &[true; 4]);
        assert_eq!(comp[0], comp[1]);
        assert_ne!(comp[0], comp[2]);
        assert!(cyclic[comp[0]]);
        assert!(cyclic[comp[2]]);
        assert!(!cyclic[comp[3]]);
    }

    #[test]
    fn inactive_vertices_break_cycles() {
        let adj = vec![vec![1], vec![0]];
        let (comp, cyclic) = sccs(&adj, &[true, false]);
        assert_eq!(comp[1], usize::MAX);
        assert!(!cyclic[comp[0]]);
    }

    #[test]
    fn path_search() {
        let adj = vec![vec![1], vec![2], vec![0]];
        assert_eq!(bfs_path(&adj, &[true; 3], 0, 0), Some(vec![1, 2, 0]));
        assert_eq!(bfs_path(&adj, &[true, false, true], 0, 2), None);
    }
}
