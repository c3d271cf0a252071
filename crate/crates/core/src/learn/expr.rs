use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Tanh,
    Sigmoid,
    Relu,
    Softplus,
    Square,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Tanh => x.tanh(),
            Activation::Sigmoid => sigmoid(x),
            Activation::Relu => x.max(0.0),
            Activation::Softplus => x.max(0.0) + (-x.abs()).exp().ln_1p(),
            Activation::Square => x * x,
        }
    }

    /// Derivative at `x`, given `y = apply(x)`.
    pub fn derivative(self, x: f64, y: f64) -> f64 {
        match self {
            Activation::Tanh => 1.0 - y * y,
            Activation::Sigmoid => y * (1.0 - y),
            Activation::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Softplus => sigmoid(x),
            Activation::Square => 2.0 * x,
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh" => Ok(Activation::Tanh),
            "sigmoid" => Ok(Activation::Sigmoid),
            "relu" => Ok(Activation::Relu),
            "softplus" => Ok(Activation::Softplus),
            "square" => Ok(Activation::Square),
            other => Err(Error::invalid("activation", other)),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Activation::Tanh => "tanh",
            Activation::Sigmoid => "sigmoid",
            Activation::Relu => "relu",
            Activation::Softplus => "softplus",
            Activation::Square => "square",
        };
        f.write_str(s)
    }
}

/// Node of an expression tape. Operands always point to earlier nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Node {
    Param(usize),
    Input(usize),
    Const(f64),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Neg(usize),
    Unary(Activation, usize),
}

/// A parameterized function `I : P × A → B` on real vectors, stored as a
/// straight-line tape with a reverse pass for exact gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFn {
    params: usize,
    inputs: usize,
    nodes: Vec<Node>,
    outputs: Vec<usize>,
}

/// Incremental construction of a [`ParamFn`].
#[derive(Debug, Clone)]
pub struct ParamFnBuilder {
    params: usize,
    inputs: usize,
    nodes: Vec<Node>,
}

impl ParamFnBuilder {
    pub fn new(params: usize, inputs: usize) -> Self {
        ParamFnBuilder { params, inputs, nodes: Vec::new() }
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn param(&mut self, i: usize) -> usize {
        assert!(i < self.params, "parameter {i} out of range");
        self.push(Node::Param(i))
    }

    pub fn input(&mut self, i: usize) -> usize {
        assert!(i < self.inputs, "input {i} out of range");
        self.push(Node::Input(i))
    }

    pub fn constant(&mut self, c: f64) -> usize {
        self.push(Node::Const(c))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Add(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Sub(a, b))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Mul(a, b))
    }

    pub fn neg(&mut self, a: usize) -> usize {
        self.push(Node::Neg(a))
    }

    pub fn unary(&mut self, f: Activation, a: usize) -> usize {
        self.push(Node::Unary(f, a))
    }

    /// Sum of the given nodes (a zero constant when empty).
    pub fn sum(&mut self, terms: &[usize]) -> usize {
        match terms {
            [] => self.constant(0.0),
            [first, rest @ ..] => rest.iter().fold(*first, |acc, &t| self.add(acc, t)),
        }
    }

    pub fn build(self, outputs: Vec<usize>) -> ParamFn {
        ParamFn::from_tape(self.params, self.inputs, self.nodes, outputs).expect("builder keeps the tape ordered")
    }
}

impl ParamFn {
    pub fn from_tape(params: usize, inputs: usize, nodes: Vec<Node>, outputs: Vec<usize>) -> Result<Self> {
        for (k, node) in nodes.iter().enumerate() {
            let ok = match *node {
                Node::Param(i) => i < params,
                Node::Input(i) => i < inputs,
                Node::Const(_) => true,
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => a < k && b < k,
                Node::Neg(a) | Node::Unary(_, a) => a < k,
            };
            if !ok {
                return Err(Error::Malformed(format!("tape node {k} refers forward or out of range")));
            }
        }
        if outputs.iter().any(|&o| o >= nodes.len()) {
            return Err(Error::Malformed("output refers to a missing node".into()));
        }
        Ok(ParamFn { params, inputs, nodes, outputs })
    }

    pub fn param_dim(&self) -> usize {
        self.params
    }

    pub fn input_dim(&self) -> usize {
        self.inputs
    }

    pub fn output_dim(&self) -> usize {
        self.outputs.len()
    }

    pub fn identity(n: usize) -> Self {
        let mut b = ParamFnBuilder::new(0, n);
        let out = (0..n).map(|i| b.input(i)).collect();
        b.build(out)
    }

    /// `a ↦ W a + c`; parameters are `W` row-major, then `c`.
    pub fn affine(inputs: usize, outputs: usize) -> Self {
        Self::dense(inputs, outputs, true)
    }

    /// `a ↦ W a`; parameters are `W` row-major.
    pub fn linear(inputs: usize, outputs: usize) -> Self {
        Self::dense(inputs, outputs, false)
    }

    fn dense(inputs: usize, outputs: usize, bias: bool) -> Self {
        let params = inputs * outputs + if bias { outputs } else { 0 };
        let mut b = ParamFnBuilder::new(params, inputs);
        let xs: Vec<usize> = (0..inputs).map(|j| b.input(j)).collect();
        let mut out = Vec::with_capacity(outputs);
        for i in 0..outputs {
            let mut terms = Vec::with_capacity(inputs + 1);
            for (j, &x) in xs.iter().enumerate() {
                let w = b.param(i * inputs + j);
                terms.push(b.mul(w, x));
            }
            if bias {
                terms.push(b.param(inputs * outputs + i));
            }
            out.push(b.sum(&terms));
        }
        b.build(out)
    }

    /// `a ↦ p ⊙ a`.
    pub fn scale(n: usize) -> Self {
        let mut b = ParamFnBuilder::new(n, n);
        let out = (0..n)
            .map(|i| {
                let (p, a) = (b.param(i), b.input(i));
                b.mul(p, a)
            })
            .collect();
        b.build(out)
    }

    /// `a ↦ a + p`.
    pub fn offset(n: usize) -> Self {
        let mut b = ParamFnBuilder::new(n, n);
        let out = (0..n)
            .map(|i| {
                let (p, a) = (b.param(i), b.input(i));
                b.add(p, a)
            })
            .collect();
        b.build(out)
    }

    /// Pointwise nonlinearity, no parameters.
    pub fn activation(n: usize, f: Activation) -> Self {
        let mut b = ParamFnBuilder::new(0, n);
        let out = (0..n)
            .map(|i| {
                let a = b.input(i);
                b.unary(f, a)
            })
            .collect();
        b.build(out)
    }

    /// `(p, a) ↦ p`, ignoring the input.
    pub fn parameters_only(params: usize, inputs: usize) -> Self {
        let mut b = ParamFnBuilder::new(params, inputs);
        let out = (0..params).map(|i| b.param(i)).collect();
        b.build(out)
    }

    /// `g ∘ f` on `P_f × P_g`; parameters of `self` come first.
    pub fn then(&self, g: &ParamFn) -> Result<ParamFn> {
        if self.output_dim() != g.inputs {
            return Err(Error::Arity { expected: g.inputs, got: self.output_dim() });
        }
        let mut nodes = self.nodes.clone();
        let mut map = Vec::with_capacity(g.nodes.len());
        for node in &g.nodes {
            let idx = match *node {
                Node::Input(i) => self.outputs[i],
                other => {
                    nodes.push(shift(other, &map, self.params, 0));
                    nodes.len() - 1
                }
            };
            map.push(idx);
        }
        let outputs = g.outputs.iter().map(|&o| map[o]).collect();
        ParamFn::from_tape(self.params + g.params, self.inputs, nodes, outputs)
    }

    /// `(p, q, a, c) ↦ (f(p, a), g(q, c))`.
    pub fn par(&self, g: &ParamFn) -> ParamFn {
        let mut nodes = self.nodes.clone();
        let mut map = Vec::with_capacity(g.nodes.len());
        for node in &g.nodes {
            nodes.push(shift(*node, &map, self.params, self.inputs));
            map.push(nodes.len() - 1);
        }
        let mut outputs = self.outputs.clone();
        outputs.extend(g.outputs.iter().map(|&o| map[o]));
        ParamFn { params: self.params + g.params, inputs: self.inputs + g.inputs, nodes, outputs }
    }

    /// All node values at `(p, a)`.
    fn forward(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        assert_eq!(p.len(), self.params, "parameter arity");
        assert_eq!(a.len(), self.inputs, "input arity");
        let mut v: Vec<f64> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let x = match *node {
                Node::Param(i) => p[i],
                Node::Input(i) => a[i],
                Node::Const(c) => c,
                Node::Add(x, y) => v[x] + v[y],
                Node::Sub(x, y) => v[x] - v[y],
                Node::Mul(x, y) => v[x] * v[y],
                Node::Neg(x) => -v[x],
                Node::Unary(f, x) => f.apply(v[x]),
            };
            v.push(x);
        }
        v
    }

    pub fn eval(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        let v = self.forward(p, a);
        self.outputs.iter().map(|&o| v[o]).collect()
    }

    /// `(I(p, a), wᵀ ∂I/∂p, wᵀ ∂I/∂a)` for the cotangent `w`.
    pub fn vjp(&self, p: &[f64], a: &[f64], w: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        assert_eq!(w.len(), self.outputs.len(), "cotangent arity");
        let v = self.forward(p, a);
        let mut adj = vec![0.0; self.nodes.len()];
        for (&o, &wi) in self.outputs.iter().zip(w) {
            adj[o] += wi;
        }
        let mut gp = vec![0.0; self.params];
        let mut ga = vec![0.0; self.inputs];
        for k in (0..self.nodes.len()).rev() {
            let g = adj[k];
            if g == 0.0 {
                continue;
            }
            match self.nodes[k] {
                Node::Param(i) => gp[i] += g,
                Node::Input(i) => ga[i] += g,
                Node::Const(_) => {}
                Node::Add(x, y) => {
                    adj[x] += g;
                    adj[y] += g;
                }
                Node::Sub(x, y) => {
                    adj[x] += g;
                    adj[y] -= g;
                }
                Node::Mul(x, y) => {
                    adj[x] += g * v[y];
                    adj[y] += g * v[x];
                }
                Node::Neg(x) => adj[x] -= g,
                Node::Unary(f, x) => adj[x] += g * f.derivative(v[x], v[k]),
            }
        }
        let out = self.outputs.iter().map(|&o| v[o]).collect();
        (out, gp, ga)
    }
}

fn shift(node: Node, map: &[usize], params: usize, inputs: usize) -> Node {
    match node {
        Node::Param(i) => Node::Param(i + params),
        Node::Input(i) => Node::Input(i + inputs),
        Node::Const(c) => Node::Const(c),
        Node::Add(a, b) => Node::Add(map[a], map[b]),
        Node::Sub(a, b) => Node::Sub(map[a], map[b]),
        Node::Mul(a, b) => Node::Mul(map[a], map[b]),
        Node::Neg(a) => Node::Neg(map[a]),
        Node::Unary(f, a) => Node::Unary(f, map[a]),
    }
}
