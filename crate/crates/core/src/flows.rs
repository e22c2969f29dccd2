//! Integral maximum flow and maximum bipartite matching.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// A directed network with a distinguished source and sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    num_nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    /// Flow on each arc, indexed like [`FlowNetwork::arcs`].
    pub flows: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> Self {
        FlowNetwork {
            num_nodes,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        self.arcs.push(Arc { from, to, capacity });
        self.arcs.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_nodes;
        if self.source >= n || self.sink >= n {
            return Err(Error::MalformedNetwork(
                "source or sink out of range".into(),
            ));
        }
        if self.source == self.sink {
            return Err(Error::MalformedNetwork("source and sink coincide".into()));
        }
        for (idx, arc) in self.arcs.iter().enumerate() {
            if arc.from >= n || arc.to >= n {
                return Err(Error::MalformedNetwork(format!(
                    "arc {idx} leaves the node range"
                )));
            }
            if arc.to == self.source {
                return Err(Error::MalformedNetwork(format!(
                    "arc {idx} enters the source"
                )));
            }
            if arc.from == self.sink {
                return Err(Error::MalformedNetwork(format!(
                    "arc {idx} leaves the sink"
                )));
            }
        }
        Ok(())
    }
}

/// Maximum flow by shortest augmenting paths (Edmonds–Karp).
pub fn max_flow(net: &FlowNetwork) -> Result<MaxFlow> {
    net.validate()?;
    // residual edges: 2*i is arc i, 2*i+1 its reverse
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); net.num_nodes];
    let mut head = Vec::with_capacity(2 * net.arcs.len());
    let mut residual = Vec::with_capacity(2 * net.arcs.len());
    for arc in &net.arcs {
        out[arc.from].push(head.len());
        head.push(arc.to);
        residual.push(arc.capacity);
        out[arc.to].push(head.len());
        head.push(arc.from);
        residual.push(0);
    }

    let mut value = 0u64;
    let mut via = vec![usize::MAX; net.num_nodes];
    loop {
        via.fill(usize::MAX);
        let mut queue = VecDeque::from([net.source]);
        let mut reached = false;
        while let Some(u) = queue.pop_front() {
            for &e in &out[u] {
                let v = head[e];
                if residual[e] > 0 && v != net.source && via[v] == usize::MAX {
                    via[v] = e;
                    if v == net.sink {
                        reached = true;
                        break;
                    }
                    queue.push_back(v);
                }
            }
            if reached {
                break;
            }
        }
        if !reached {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = net.sink;
        while v != net.source {
            let e = via[v];
            bottleneck = bottleneck.min(residual[e]);
            v = head[e ^ 1];
        }
        let mut v = net.sink;
        while v != net.source {
            let e = via[v];
            residual[e] -= bottleneck;
            residual[e ^ 1] += bottleneck;
            v = head[e ^ 1];
        }
        value += bottleneck;
    }

    let flows = (0..net.arcs.len()).map(|i| residual[2 * i + 1]).collect();
    Ok(MaxFlow { value, flows })
}

/// A matching between left nodes `0..left` and right nodes `0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.mate_left.iter().flatten().count()
    }

    pub fn saturates_left(&self) -> bool {
        self.mate_left.iter().all(Option::is_some)
    }

    /// Matched pairs `(left, right)` in left order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }
}

/// Maximum cardinality matching (Hopcroft–Karp). Edges are `(left, right)`
/// pairs; out-of-range endpoints are ignored.
pub fn max_bipartite_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> Matching {
    let mut adj = vec![Vec::new(); left];
    for &(l, r) in edges {
        if l < left && r < right {
            adj[l].push(r);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut mate_left: Vec<Option<usize>> = vec![None; left];
    let mut mate_right: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![usize::MAX; left];

    loop {
        // layer free left nodes, then alternate along matched edges
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_left[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_right[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left {
            if mate_left[l].is_none() {
                augment(l, &adj, &mut dist, &mut mate_left, &mut mate_right);
            }
        }
    }
    Matching {
        mate_left,
        mate_right,
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        let ok = match mate_right[r] {
            None => true,
            Some(l2) => dist[l2] == dist[l] + 1 && augment(l2, adj, dist, mate_left, mate_right),
        };
        if ok {
            mate_left[l] = Some(r);
            mate_right[r] = Some(l);
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
