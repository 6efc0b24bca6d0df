//! Finite trees, caterpillar parameters, and the named constructions the
//! classifiers operate on.
//!
//! A caterpillar is a tree whose non-leaf vertices form a path (the spine).
//! It is described here by the leaf counts `a_1, ..., a_m` along the spine;
//! the parameter is considered up to reversal, with the lexicographically
//! smaller of the two orientations as the canonical representative.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid caterpillar parameter: {0}")]
    InvalidParameter(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("malformed tree input: {0}")]
    Malformed(String),
    #[error("unknown named tree `{0}`")]
    UnknownName(String),
}

/// A finite tree with vertices `0..vertex_count`. Edge order is significant:
/// it fixes the row and column indexing of the edge-indexed Ricci matrix and
/// the layout of weight vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    degrees: Vec<u32>,
}

impl Tree {
    pub fn new(vertex_count: usize, edges: Vec<(u32, u32)>) -> Result<Self, TreeError> {
        if vertex_count == 0 {
            return Err(TreeError::NotATree("a tree has at least one vertex".into()));
        }
        if edges.len() != vertex_count - 1 {
            return Err(TreeError::NotATree(format!(
                "{} vertices need {} edges, got {}",
                vertex_count,
                vertex_count - 1,
                edges.len()
            )));
        }
        let mut degrees = vec![0u32; vertex_count];
        let mut seen = BTreeSet::new();
        for &(x, y) in &edges {
            if x as usize >= vertex_count || y as usize >= vertex_count {
                return Err(TreeError::NotATree(format!("edge ({x}, {y}) out of range")));
            }
            if x == y {
                return Err(TreeError::NotATree(format!("self-loop at {x}")));
            }
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(TreeError::NotATree(format!("duplicate edge ({x}, {y})")));
            }
            degrees[x as usize] += 1;
            degrees[y as usize] += 1;
        }
        let tree = Self { vertex_count, edges, degrees };
        if !tree.is_connected() {
            return Err(TreeError::NotATree("graph is not connected".into()));
        }
        Ok(tree)
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(x, y) in &self.edges {
            adj[x as usize].push(y);
            adj[y as usize].push(x);
        }
        adj
    }

    /// Parses an edge list: one edge per line as two whitespace-separated
    /// vertex ids, blank lines and `#` comments ignored. Ids are arbitrary
    /// nonnegative integers and are remapped to `0..n` in sorted order; the
    /// file's line order becomes the edge order.
    pub fn from_edge_list(text: &str) -> Result<Self, TreeError> {
        let mut raw = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<u64, TreeError> {
                tok.ok_or_else(|| {
                    TreeError::Malformed(format!("line {}: expected two vertex ids", lineno + 1))
                })?
                .parse::<u64>()
                .map_err(|_| TreeError::Malformed(format!("line {}: expected integer", lineno + 1)))
            };
            let x = parse(it.next())?;
            let y = parse(it.next())?;
            if it.next().is_some() {
                return Err(TreeError::Malformed(format!(
                    "line {}: expected exactly two vertex ids",
                    lineno + 1
                )));
            }
            raw.push((x, y));
        }
        if raw.is_empty() {
            return Err(TreeError::Malformed("no edges in input".into()));
        }
        let ids: BTreeSet<u64> = raw.iter().flat_map(|&(x, y)| [x, y]).collect();
        let index: BTreeMap<u64, u32> =
            ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
        let edges = raw.iter().map(|&(x, y)| (index[&x], index[&y])).collect();
        Self::new(ids.len(), edges)
    }
}

/// Leaf counts along a caterpillar spine. For a spine of length one the
/// single count may be zero (the one-vertex tree) or `k` (the star with `k`
/// edges); for longer spines both endpoint counts must be positive so that
/// the spine really is the set of internal vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaterpillarParam {
    a: Vec<u32>,
}

impl CaterpillarParam {
    pub fn new(a: Vec<u32>) -> Result<Self, TreeError> {
        if a.is_empty() {
            return Err(TreeError::InvalidParameter("empty leaf-count list".into()));
        }
        if a.len() >= 2 && (a[0] == 0 || a[a.len() - 1] == 0) {
            return Err(TreeError::InvalidParameter(
                "endpoint leaf counts must be positive when the spine has length >= 2".into(),
            ));
        }
        Ok(Self { a })
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn leaf_counts(&self) -> &[u32] {
        &self.a
    }

    pub fn total_leaves(&self) -> u64 {
        self.a.iter().map(|&x| x as u64).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut a = self.a.clone();
        a.reverse();
        Self { a }
    }

    pub fn is_canonical(&self) -> bool {
        let rev = self.reversed();
        self.a <= rev.a
    }

    pub fn canonical(&self) -> Self {
        let rev = self.reversed();
        if self.a <= rev.a {
            self.clone()
        } else {
            rev
        }
    }

    /// All canonical parameters reachable by adding one pendant leaf
    /// somewhere on the spine (spine length fixed).
    pub fn children(&self) -> Vec<CaterpillarParam> {
        let mut out = BTreeSet::new();
        for i in 0..self.a.len() {
            let mut a = self.a.clone();
            a[i] += 1;
            out.insert(Self { a }.canonical());
        }
        out.into_iter().collect()
    }

    /// All canonical parameters reachable by removing one pendant leaf,
    /// keeping the result a valid caterpillar on the same spine.
    pub fn predecessors(&self) -> Vec<CaterpillarParam> {
        let m = self.a.len();
        let mut out = BTreeSet::new();
        for i in 0..m {
            if self.a[i] == 0 {
                continue;
            }
            let mut a = self.a.clone();
            a[i] -= 1;
            if m >= 2 && (a[0] == 0 || a[m - 1] == 0) {
                continue;
            }
            out.insert(Self { a }.canonical());
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for CaterpillarParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.a.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for CaterpillarParam {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let a = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| TreeError::Malformed(format!("bad leaf count `{tok}`")))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        Self::new(a)
    }
}

/// Canonical representative of a parameter under spine reversal.
pub fn canonicalize(p: &CaterpillarParam) -> CaterpillarParam {
    p.canonical()
}

/// Builds the caterpillar: spine vertices `0..m` joined in a path, then the
/// pendant leaves grouped by spine vertex. Edge order: the `m - 1` spine
/// edges first (left to right), then pendant edges grouped by spine vertex.
pub fn build_caterpillar(p: &CaterpillarParam) -> Tree {
    let m = p.m();
    let mut edges = Vec::new();
    for i in 0..m - 1 {
        edges.push((i as u32, i as u32 + 1));
    }
    let mut next = m as u32;
    for (i, &count) in p.leaf_counts().iter().enumerate() {
        for _ in 0..count {
            edges.push((i as u32, next));
            next += 1;
        }
    }
    Tree::new(m + p.total_leaves() as usize, edges).expect("caterpillar construction is a tree")
}

/// The star with `k` edges (`k = 0` gives the one-vertex tree).
pub fn star(k: u32) -> Tree {
    build_caterpillar(&CaterpillarParam::new(vec![k]).expect("star parameter"))
}

/// Two adjacent centers with `a` and `b` pendant leaves.
pub fn double_star(a: u32, b: u32) -> Result<Tree, TreeError> {
    Ok(build_caterpillar(&CaterpillarParam::new(vec![a, b])?))
}

/// The path on `n` vertices.
pub fn path(n: u32) -> Result<Tree, TreeError> {
    let param = match n {
        0 => return Err(TreeError::InvalidParameter("path needs at least one vertex".into())),
        1 => vec![0],
        2 => vec![1],
        3 => vec![2],
        _ => {
            let mut a = vec![0; (n - 2) as usize];
            a[0] = 1;
            a[(n - 3) as usize] = 1;
            a
        }
    };
    Ok(build_caterpillar(&CaterpillarParam::new(param)?))
}

/// The spider with `legs` legs of `len` edges each: vertex 0 is the center,
/// ring `r` holds vertices `(r-1)*legs + 1 ..= r*legs`, and edges are listed
/// ring by ring so that weights grouped by distance from the center line up
/// with the edge order.
pub fn spider(legs: u32, len: u32) -> Result<Tree, TreeError> {
    if legs == 0 || len == 0 {
        return Err(TreeError::InvalidParameter("spider needs legs >= 1 and len >= 1".into()));
    }
    let mut edges = Vec::new();
    for r in 1..=len {
        for i in 1..=legs {
            let outer = (r - 1) * legs + i;
            let inner = if r == 1 { 0 } else { (r - 2) * legs + i };
            edges.push((inner, outer));
        }
    }
    Tree::new((legs * len + 1) as usize, edges)
}

/// Long-spine caterpillar with single pendants at both ends and one extra
/// pendant at interior spine position `i` (1-based, `2 <= i <= m - 1`).
pub fn defect_param(m: usize, i: usize) -> Result<CaterpillarParam, TreeError> {
    if m < 3 || i < 2 || i > m - 1 {
        return Err(TreeError::InvalidParameter(format!(
            "defect position must satisfy 2 <= i <= m - 1, got m = {m}, i = {i}"
        )));
    }
    let mut a = vec![0u32; m];
    a[0] = 1;
    a[m - 1] = 1;
    a[i - 1] += 1;
    CaterpillarParam::new(a)
}

/// Caterpillar with `a` pendants on the first spine vertex, `b` on the last,
/// and a bare spine between.
pub fn endpoint_param(m: usize, a: u32, b: u32) -> Result<CaterpillarParam, TreeError> {
    if m < 2 || a == 0 || b == 0 {
        return Err(TreeError::InvalidParameter(format!(
            "endpoint family needs m >= 2 and positive endpoint counts, got m = {m}, a = {a}, b = {b}"
        )));
    }
    let mut v = vec![0u32; m];
    v[0] = a;
    v[m - 1] = b;
    CaterpillarParam::new(v)
}

/// Builds a tree from a compact spec string:
/// `star:K`, `path:N`, `double-star:A,B`, `spider:LEGS,LEN`,
/// `defect:M,I`, `endpoint:M,A,B`, the shorthand `s32` for the three-legged
/// spider of leg length two, or a bare caterpillar parameter `A1,A2,...`.
pub fn build_named(spec: &str) -> Result<Tree, TreeError> {
    if spec.trim() == "s32" {
        return spider(3, 2);
    }
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (spec.trim(), ""),
    };
    let nums = || -> Result<Vec<u32>, TreeError> {
        args.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| TreeError::Malformed(format!("bad number `{t}` in `{spec}`")))
            })
            .collect()
    };
    match name {
        "star" => {
            let v = nums()?;
            if v.len() != 1 {
                return Err(TreeError::Malformed("star takes one number".into()));
            }
            Ok(star(v[0]))
        }
        "path" => {
            let v = nums()?;
            if v.len() != 1 {
                return Err(TreeError::Malformed("path takes one number".into()));
            }
            path(v[0])
        }
        "double-star" => {
            let v = nums()?;
            if v.len() != 2 {
                return Err(TreeError::Malformed("double-star takes two numbers".into()));
            }
            double_star(v[0], v[1])
        }
        "spider" => {
            let v = nums()?;
            if v.len() != 2 {
                return Err(TreeError::Malformed("spider takes two numbers".into()));
            }
            spider(v[0], v[1])
        }
        "defect" => {
            let v = nums()?;
            if v.len() != 2 {
                return Err(TreeError::Malformed("defect takes two numbers".into()));
            }
            Ok(build_caterpillar(&defect_param(v[0] as usize, v[1] as usize)?))
        }
        "endpoint" => {
            let v = nums()?;
            if v.len() != 3 {
                return Err(TreeError::Malformed("endpoint takes three numbers".into()));
            }
            Ok(build_caterpillar(&endpoint_param(v[0] as usize, v[1], v[2])?))
        }
        _ if spec.contains(':') => Err(TreeError::UnknownName(name.into())),
        _ => Ok(build_caterpillar(&spec.parse::<CaterpillarParam>()?)),
    }
}

/// Recognizes a caterpillar and returns its canonical parameter, or `None`
/// if some internal vertex has three or more internal neighbors.
pub fn caterpillar_param_of(t: &Tree) -> Option<CaterpillarParam> {
    let n = t.vertex_count();
    if n == 1 {
        return Some(CaterpillarParam::new(vec![0]).unwrap());
    }
    if n == 2 {
        return Some(CaterpillarParam::new(vec![1]).unwrap());
    }
    let adj = t.adjacency();
    let internal: Vec<u32> =
        (0..n as u32).filter(|&v| t.degree(v) >= 2).collect();
    if internal.len() == 1 {
        return Some(CaterpillarParam::new(vec![n as u32 - 1]).unwrap());
    }
    let internal_degree = |v: u32| adj[v as usize].iter().filter(|&&w| t.degree(w) >= 2).count();
    if internal.iter().any(|&v| internal_degree(v) > 2) {
        return None;
    }
    let ends: Vec<u32> = internal.iter().copied().filter(|&v| internal_degree(v) == 1).collect();
    debug_assert_eq!(ends.len(), 2, "internal vertices of a tree form a subtree");
    let mut spine = vec![ends[0]];
    let mut prev = None;
    loop {
        let cur = *spine.last().unwrap();
        let next = adj[cur as usize]
            .iter()
            .copied()
            .find(|&w| t.degree(w) >= 2 && Some(w) != prev);
        match next {
            Some(w) => {
                prev = Some(cur);
                spine.push(w);
            }
            None => break,
        }
    }
    debug_assert_eq!(spine.len(), internal.len());
    let a: Vec<u32> = spine
        .iter()
        .map(|&v| adj[v as usize].iter().filter(|&&w| t.degree(w) == 1).count() as u32)
        .collect();
    Some(CaterpillarParam::new(a).expect("recognized spine has pendant endpoints").canonical())
}

/// Whether some vertex has at least three non-leaf neighbors, i.e. whether
/// the tree contains a subdivided claw (three disjoint paths of length two
/// from a common vertex) as a subtree.
pub fn contains_subdivided_claw(t: &Tree) -> bool {
    let adj = t.adjacency();
    (0..t.vertex_count() as u32)
        .any(|v| adj[v as usize].iter().filter(|&&w| t.degree(w) >= 2).count() >= 3)
}

fn subtree_sizes(adj: &[Vec<u32>], root: u32) -> Vec<(u32, Option<u32>, usize)> {
    // Post-order (vertex, parent, subtree size) via an explicit stack.
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(root, None::<u32>)];
    while let Some((v, p)) = stack.pop() {
        order.push((v, p));
        for &w in &adj[v as usize] {
            if Some(w) != p {
                stack.push((w, Some(v)));
            }
        }
    }
    let mut size = vec![1usize; n];
    let mut out = Vec::with_capacity(n);
    for &(v, p) in order.iter().rev() {
        if let Some(p) = p {
            size[p as usize] += size[v as usize];
        }
        out.push((v, p, size[v as usize]));
    }
    out
}

fn centroids(t: &Tree) -> Vec<u32> {
    let n = t.vertex_count();
    let adj = t.adjacency();
    let info = subtree_sizes(&adj, 0);
    let size: BTreeMap<u32, usize> = info.iter().map(|&(v, _, s)| (v, s)).collect();
    let parent: BTreeMap<u32, Option<u32>> = info.iter().map(|&(v, p, _)| (v, p)).collect();
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for v in 0..n as u32 {
        let mut worst = n - size[&v];
        for &w in &adj[v as usize] {
            if parent[&w] == Some(v) {
                worst = worst.max(size[&w]);
            }
        }
        match worst.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = worst;
                out = vec![v];
            }
            std::cmp::Ordering::Equal => out.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    out
}

fn rooted_code(adj: &[Vec<u32>], v: u32, parent: Option<u32>) -> Vec<u8> {
    let mut child_codes: Vec<Vec<u8>> = adj[v as usize]
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| rooted_code(adj, w, Some(v)))
        .collect();
    child_codes.sort();
    let mut code = vec![b'('];
    for c in child_codes {
        code.extend(c);
    }
    code.push(b')');
    code
}

/// Isomorphism-invariant canonical code (minimum rooted code over the one or
/// two centroids).
pub fn canonical_code(t: &Tree) -> Vec<u8> {
    let adj = t.adjacency();
    centroids(t)
        .into_iter()
        .map(|c| rooted_code(&adj, c, None))
        .min()
        .expect("tree has a centroid")
}

/// All non-isomorphic trees on exactly `n` vertices, grown leaf by leaf and
/// deduplicated by canonical code.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    if n == 0 {
        return Vec::new();
    }
    let mut current = vec![Tree::new(1, Vec::new()).unwrap()];
    for _ in 2..=n {
        let mut next: BTreeMap<Vec<u8>, Tree> = BTreeMap::new();
        for t in &current {
            let m = t.vertex_count();
            for v in 0..m as u32 {
                let mut edges = t.edges().to_vec();
                edges.push((v, m as u32));
                let grown = Tree::new(m + 1, edges).unwrap();
                next.entry(canonical_code(&grown)).or_insert(grown);
            }
        }
        current = next.into_values().collect();
    }
    current
}
