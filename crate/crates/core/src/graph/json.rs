//! JSON payloads for graphs, labelings and orientations.
//!
//! ```text
//! graph:       {"n": 3, "edges": [[0, 1, "C"], [1, 2, "O"]]}
//! labeling:    {"labels": [["R", "R"], ["R", "B"]]}     // [endpoint0-half, endpoint1-half]
//! orientation: {"orient": [0, 1]}                       // 0 = endpoint0 -> endpoint1
//! ```

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Color, Direction, EdgeType, GraphError, Labeling, NodeId, Orientation, TypedMultiGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(NodeId, NodeId, EdgeType)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingFile {
    pub labels: Vec<[Color; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationFile {
    pub orient: Vec<u8>,
}

fn parse<T: for<'de> Deserialize<'de>>(reader: impl Read, what: &str) -> Result<T, GraphError> {
    serde_json::from_reader(reader).map_err(|e| GraphError::Parse(format!("{what}: {e}")))
}

fn emit<T: Serialize>(mut writer: impl Write, value: &T) -> Result<(), GraphError> {
    serde_json::to_writer(&mut writer, value).map_err(|e| GraphError::Io(e.to_string()))?;
    writer.write_all(b"\n").map_err(|e| GraphError::Io(e.to_string()))
}

fn check_len(what: &str, got: usize, expected: usize) -> Result<(), GraphError> {
    if got != expected {
        return Err(GraphError::Parse(format!(
            "{what}: {got} entries but the graph has {expected} edges"
        )));
    }
    Ok(())
}

pub fn read_graph(reader: impl Read) -> Result<TypedMultiGraph, GraphError> {
    let file: GraphFile = parse(reader, "graph")?;
    TypedMultiGraph::new(file.n, file.edges).map_err(|e| match e {
        GraphError::SelfLoop(_) | GraphError::NodeOutOfRange { .. } => {
            GraphError::Parse(format!("graph: {e}"))
        }
        other => other,
    })
}

pub fn write_graph(writer: impl Write, g: &TypedMultiGraph) -> Result<(), GraphError> {
    let file = GraphFile {
        n: g.node_count(),
        edges: g.edges().iter().map(|e| (e.ends[0], e.ends[1], e.kind)).collect(),
    };
    emit(writer, &file)
}

/// Reads a total labeling and checks that it has one entry per edge.
pub fn read_labeling(reader: impl Read, edge_count: usize) -> Result<Labeling, GraphError> {
    let file: LabelingFile = parse(reader, "labeling")?;
    check_len("labeling", file.labels.len(), edge_count)?;
    Ok(Labeling::from_pairs(file.labels))
}

/// Writes a total labeling; panics on unset halves, which never leave a solver.
pub fn write_labeling(writer: impl Write, labeling: &Labeling) -> Result<(), GraphError> {
    emit(writer, &LabelingFile { labels: labeling.pairs() })
}

pub fn read_orientation(reader: impl Read, edge_count: usize) -> Result<Orientation, GraphError> {
    let file: OrientationFile = parse(reader, "orientation")?;
    check_len("orientation", file.orient.len(), edge_count)?;
    let dirs = file
        .orient
        .iter()
        .enumerate()
        .map(|(i, &d)| match d {
            0 => Ok(Direction::Forward),
            1 => Ok(Direction::Backward),
            _ => Err(GraphError::Parse(format!("orientation: entry {i} is {d}, expected 0 or 1"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Orientation::new(dirs))
}

pub fn write_orientation(writer: impl Write, o: &Orientation) -> Result<(), GraphError> {
    let orient = o
        .dirs()
        .iter()
        .map(|d| match d {
            Direction::Forward => 0,
            Direction::Backward => 1,
        })
        .collect();
    emit(writer, &OrientationFile { orient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random_regular, gen_structured, Structured, TypeAssignment};

    #[test]
    fn graph_round_trip() {
        let k4 = gen_structured(Structured::Complete(4), EdgeType::C).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &k4).unwrap();
        assert_eq!(read_graph(buf.as_slice()).unwrap(), k4);

        let mixed = gen_random_regular(20, 3, 5, TypeAssignment::Coin).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &mixed).unwrap();
        assert_eq!(read_graph(buf.as_slice()).unwrap(), mixed);
    }

    #[test]
    fn graph_format() {
        let g = TypedMultiGraph::new(3, [(0, 1, EdgeType::C), (1, 2, EdgeType::O)]).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"n\":3,\"edges\":[[0,1,\"C\"],[1,2,\"O\"]]}\n"
        );
    }

    #[test]
    fn bad_type_string() {
        let err = read_graph(r#"{"n": 2, "edges": [[0, 1, "X"]]}"#.as_bytes()).unwrap_err();
        let GraphError::Parse(msg) = err else { panic!("expected parse error") };
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn graph_self_loop_is_parse_error() {
        assert!(matches!(
            read_graph(r#"{"n": 2, "edges": [[1, 1, "C"]]}"#.as_bytes()),
            Err(GraphError::Parse(_))
        ));
    }

    #[test]
    fn labeling_round_trip_and_count() {
        let l = Labeling::from_pairs(vec![[Color::R, Color::B], [Color::B, Color::B]]);
        let mut buf = Vec::new();
        write_labeling(&mut buf, &l).unwrap();
        assert_eq!(read_labeling(buf.as_slice(), 2).unwrap(), l);
        assert!(matches!(read_labeling(buf.as_slice(), 3), Err(GraphError::Parse(_))));
    }

    #[test]
    fn orientation_round_trip() {
        let o = Orientation::new(vec![Direction::Forward, Direction::Backward]);
        let mut buf = Vec::new();
        write_orientation(&mut buf, &o).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "{\"orient\":[0,1]}\n");
        assert_eq!(read_orientation(buf.as_slice(), 2).unwrap(), o);
        assert!(read_orientation(r#"{"orient": [2]}"#.as_bytes(), 1).is_err());
    }
}
