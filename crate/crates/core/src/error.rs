use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty space")]
    EmptySpace,
    #[error("distance table is {rows}x{cols} but there are {labels} labels")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        labels: usize,
    },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("d({x},{y}) = {xy} but d({y},{x}) = {yx}")]
    Asymmetry {
        x: String,
        y: String,
        xy: Rational,
        yx: Rational,
    },
    #[error("negative distance d({x},{y}) = {value}")]
    NegativeDistance { x: String, y: String, value: Rational },
    #[error("nonzero diagonal entry d({x},{x}) = {value}")]
    NonzeroDiagonal { x: String, value: Rational },
    #[error("triangle inequality fails: d({x},{y}) + d({y},{z}) < d({x},{z})")]
    TriangleViolation { x: String, y: String, z: String },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("drift value at {x} exceeds the trim function ({delta} > {bound})")]
    DriftTooLarge {
        x: String,
        delta: Rational,
        bound: Rational,
    },
    #[error("function is defined on {found} points but the space has {expected}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("trajectories of {x} and {y} never meet")]
    NeverMeets { x: String, y: String },
    #[error("function is not a member of the tight span: {0}")]
    NotMember(String),
    #[error("start function violates f(x) + f(y) >= d(x,y) at ({x},{y})")]
    StarViolation { x: String, y: String },
    #[error("components {u} and {v} are at distance zero")]
    UnexpectedGlue { u: String, v: String },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("tree has {0} leaves, at least 3 are required")]
    TooFewLeaves(usize),
    #[error("chain trajectories of {x} and {y} never meet")]
    NoMeeting { x: String, y: String },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("edge above {node:?} has nonpositive length {length}")]
    NonpositiveLength { node: String, length: Rational },
    #[error("invalid cylinder point: {0}")]
    InvalidPoint(String),
}

impl Error {
    /// Input that could not be read at all, as opposed to a valid input
    /// that fails a mathematical check.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::ShapeMismatch { .. } | Error::DuplicateLabel(_)
        )
    }
}
