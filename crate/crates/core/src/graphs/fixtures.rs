//! Named instances used throughout the tests and the CLI.
//!
//! Pair fixtures are `(G, G′)`; the figure names follow the published numbering.

use super::{make_complete, make_cycle, make_grid, make_path, make_wheel, Graph};
use crate::error::{Error, Result};

fn rows<const N: usize>(m: [[u8; N]; N]) -> Graph {
    Graph::from_adjacency(&m).expect("fixture matrix is a valid adjacency matrix")
}

/// Non-isomorphic 4-vertex pair: C₄ against a graph with degrees {3,2,2,1}.
pub fn fig1() -> (Graph, Graph) {
    (
        make_cycle(4).expect("valid"),
        rows([[0, 0, 1, 1], [0, 0, 0, 1], [1, 0, 0, 1], [1, 1, 1, 0]]),
    )
}

/// Isomorphic 4-vertex pair with four isomorphisms.
pub fn fig2() -> (Graph, Graph) {
    (
        rows([[0, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 1], [1, 0, 1, 0]]),
        rows([[0, 1, 1, 1], [1, 0, 0, 1], [1, 0, 0, 1], [1, 1, 1, 0]]),
    )
}

/// Co-spectral 5-vertex pair: C₄ plus an isolated vertex against the star K₁,₄.
pub fn fig4() -> (Graph, Graph) {
    (
        rows([[0, 1, 0, 1, 0], [1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [1, 0, 1, 0, 0], [0, 0, 0, 0, 0]]),
        rows([[0, 1, 1, 1, 1], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]]),
    )
}

/// Co-spectral 6-vertex pair.
pub fn fig5() -> (Graph, Graph) {
    (
        rows([
            [0, 1, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 1],
            [0, 0, 0, 1, 0, 1],
            [1, 1, 1, 1, 1, 0],
        ]),
        rows([
            [0, 1, 0, 0, 0, 0],
            [1, 0, 1, 1, 0, 0],
            [0, 1, 0, 1, 1, 0],
            [0, 1, 1, 0, 1, 0],
            [0, 0, 1, 1, 0, 1],
            [0, 0, 0, 0, 1, 0],
        ]),
    )
}

/// Strongly regular C₄ (4,2,0,2) against K₄ (4,3,2,0).
pub fn fig6() -> (Graph, Graph) {
    (make_cycle(4).expect("valid"), make_complete(4).expect("valid"))
}

/// Strongly regular C₅ (5,2,0,1) against K₅ (5,4,3,0).
pub fn fig7() -> (Graph, Graph) {
    (make_cycle(5).expect("valid"), make_complete(5).expect("valid"))
}

/// Strongly regular K₃,₃ (6,3,0,3) against the octahedron (6,4,2,4).
pub fn fig8() -> (Graph, Graph) {
    let k33 = Graph::from_edge_list(6, (0..6).flat_map(|u| (u + 1..6).filter(move |v| (u + v) % 2 == 1).map(move |v| (u, v))))
        .expect("valid");
    (
        k33,
        rows([
            [0, 1, 1, 1, 1, 0],
            [1, 0, 1, 0, 1, 1],
            [1, 1, 0, 1, 0, 1],
            [1, 0, 1, 0, 1, 1],
            [1, 1, 0, 1, 0, 1],
            [0, 1, 1, 1, 1, 0],
        ]),
    )
}

/// Perfect matching on four vertices: edges 0–1 and 2–3.
pub fn matching4() -> Graph {
    Graph::from_edge_list(4, [(0, 1), (2, 3)]).expect("valid")
}

/// Single graphs addressable by name.
pub const SINGLE_NAMES: &[&str] = &["k2", "c4", "c5", "c6", "c7", "g23", "w7", "p3", "matching4"];

/// Pair fixtures addressable by name.
pub const PAIR_NAMES: &[&str] = &["fig1", "fig2", "fig4", "fig5", "fig6", "fig7", "fig8"];

/// Subgraph-isomorphism pairs `(G, H)` addressable by name.
pub const SGI_NAMES: &[&str] = &["c4-p3", "matching4-p3"];

pub fn single(name: &str) -> Result<Graph> {
    match name {
        "k2" => make_complete(2),
        "c4" => make_cycle(4),
        "c5" => make_cycle(5),
        "c6" => make_cycle(6),
        "c7" => make_cycle(7),
        "g23" => make_grid(2, 3),
        "w7" => make_wheel(7),
        "p3" => make_path(3),
        "matching4" => Ok(matching4()),
        _ => Err(Error::input(format!("unknown graph fixture {name:?}; known: {}", SINGLE_NAMES.join(", ")))),
    }
}

pub fn pair(name: &str) -> Result<(Graph, Graph)> {
    Ok(match name {
        "fig1" => fig1(),
        "fig2" => fig2(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig6" => fig6(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        _ => return Err(Error::input(format!("unknown pair fixture {name:?}; known: {}", PAIR_NAMES.join(", ")))),
    })
}

pub fn sgi_pair(name: &str) -> Result<(Graph, Graph)> {
    let p3 = make_path(3)?;
    Ok(match name {
        "c4-p3" => (make_cycle(4)?, p3),
        "matching4-p3" => (matching4(), p3),
        _ => return Err(Error::input(format!("unknown SGI fixture {name:?}; known: {}", SGI_NAMES.join(", ")))),
    })
}
