use std::collections::VecDeque;

/// A directed arc with an integer capacity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub cap: i64,
}

/// A capacitated network with a distinguished source and sink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    num_nodes: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < num_nodes && sink < num_nodes && source != sink);
        FlowNetwork {
            num_nodes,
            arcs: Vec::new(),
            source,
            sink,
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        assert!(from < self.num_nodes && to < self.num_nodes);
        assert!(cap >= 0, "negative capacity");
        self.arcs.push(Arc { from, to, cap });
        self.arcs.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

/// An integral flow: one value per arc, in arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub value: i64,
    pub flows: Vec<i64>,
}

impl FlowResult {
    /// Capacity bounds hold on every arc, every internal node conserves flow,
    /// and `value` equals the net outflow of the source.
    pub fn is_feasible(&self, net: &FlowNetwork) -> bool {
        if self.flows.len() != net.arcs.len() {
            return false;
        }
        let mut excess = vec![0i64; net.num_nodes];
        for (arc, &f) in net.arcs.iter().zip(&self.flows) {
            if f < 0 || f > arc.cap {
                return false;
            }
            excess[arc.from] -= f;
            excess[arc.to] += f;
        }
        excess.iter().enumerate().all(|(v, &e)| {
            if v == net.source {
                e == -self.value
            } else if v == net.sink {
                e == self.value
            } else {
                e == 0
            }
        })
    }
}

struct Residual {
    to: usize,
    cap: i64,
    rev: usize,
}

/// Dinic's blocking-flow algorithm; all arithmetic is integral.
pub fn max_flow(net: &FlowNetwork) -> FlowResult {
    let n = net.num_nodes;
    let mut graph: Vec<Vec<Residual>> = (0..n).map(|_| Vec::new()).collect();
    let mut handles = Vec::with_capacity(net.arcs.len());
    for arc in &net.arcs {
        let fwd = graph[arc.from].len();
        let bwd = graph[arc.to].len() + usize::from(arc.from == arc.to);
        graph[arc.from].push(Residual {
            to: arc.to,
            cap: arc.cap,
            rev: bwd,
        });
        graph[arc.to].push(Residual {
            to: arc.from,
            cap: 0,
            rev: fwd,
        });
        handles.push((arc.from, fwd));
    }

    let (s, t) = (net.source, net.sink);
    let mut value = 0i64;
    let mut level = vec![-1i32; n];
    let mut next = vec![0usize; n];
    loop {
        level.iter_mut().for_each(|l| *l = -1);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in &graph[v] {
                if e.cap > 0 && level[e.to] < 0 {
                    level[e.to] = level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        if level[t] < 0 {
            break;
        }
        next.iter_mut().for_each(|i| *i = 0);
        loop {
            let pushed = augment(&mut graph, &level, &mut next, s, t, i64::MAX);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }

    let flows = net
        .arcs
        .iter()
        .zip(&handles)
        .map(|(arc, &(v, i))| arc.cap - graph[v][i].cap)
        .collect();
    FlowResult { value, flows }
}

fn augment(
    graph: &mut [Vec<Residual>],
    level: &[i32],
    next: &mut [usize],
    v: usize,
    t: usize,
    limit: i64,
) -> i64 {
    if v == t {
        return limit;
    }
    while next[v] < graph[v].len() {
        let i = next[v];
        let (to, cap) = (graph[v][i].to, graph[v][i].cap);
        if cap > 0 && level[to] == level[v] + 1 {
            let pushed = augment(graph, level, next, to, t, limit.min(cap));
            if pushed > 0 {
                graph[v][i].cap -= pushed;
                let rev = graph[v][i].rev;
                graph[to][rev].cap += pushed;
                return pushed;
            }
        }
        next[v] += 1;
    }
    0
}
