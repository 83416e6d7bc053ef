use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{EdgeOp, Graph, GraphError, OpKind, UpdateBatch};

/// Reads a whitespace-separated edge list from disk. See [`parse_edge_list`].
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| GraphError::Io { path: path.to_path_buf(), source })?;
    parse_edge_list(BufReader::new(file))
}

/// Parses `u v` lines. Blank lines and lines starting with `#` are skipped,
/// extra columns are ignored. Self-loops and duplicate edges are dropped and
/// the remaining endpoints are compacted to `[0, n)` in ascending id order,
/// so vertices that only had self-loops disappear.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut raw = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| GraphError::Parse { line: lineno, reason: e.to_string() })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64, GraphError> {
            let tok = fields
                .next()
                .ok_or_else(|| GraphError::Parse { line: lineno, reason: "expected two vertex ids".into() })?;
            tok.parse::<u64>()
                .map_err(|_| GraphError::Parse { line: lineno, reason: format!("invalid vertex id {tok:?}") })
        };
        let u = next_id()?;
        let v = next_id()?;
        if u != v {
            raw.push((u, v));
        }
    }

    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let index = |x: u64| ids.binary_search(&x).expect("id collected above");
    let mut g = Graph::new(ids.len());
    for (u, v) in raw {
        g.insert_edge(index(u), index(v));
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct OpRecord {
    op: char,
    u: usize,
    v: usize,
}

/// Writes a batch as `op,u,v` rows in index order, `op` being `i` or `d`.
pub fn write_batch_csv<W: Write>(out: W, batch: &UpdateBatch) -> Result<(), GraphError> {
    let mut w = csv::Writer::from_writer(out);
    for op in batch.to_ops() {
        let tag = match op.kind {
            OpKind::Insert => 'i',
            OpKind::Delete => 'd',
        };
        w.serialize(OpRecord { op: tag, u: op.u, v: op.v })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads `op,u,v` rows back into raw operations (timestamps = row order).
pub fn read_batch_csv<R: Read>(input: R) -> Result<Vec<EdgeOp>, GraphError> {
    let mut r = csv::Reader::from_reader(input);
    let mut ops = Vec::new();
    for (row, rec) in r.deserialize::<OpRecord>().enumerate() {
        let rec = rec?;
        let kind = match rec.op {
            'i' => OpKind::Insert,
            'd' => OpKind::Delete,
            other => return Err(GraphError::Parse { line: row + 2, reason: format!("unknown op {other:?}") }),
        };
        ops.push(EdgeOp { kind, u: rec.u, v: rec.v, timestamp: None });
    }
    Ok(ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_two_edges() {
        let g = parse_edge_list("0 1\n1 2".as_bytes()).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
    }

    #[test]
    fn dedup_and_comment() {
        let g = parse_edge_list("0 1\n1 0\n# c".as_bytes()).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
    }

    #[test]
    fn lone_self_loop_vanishes() {
        let g = parse_edge_list("0 0".as_bytes()).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (0, 0));
    }

    #[test]
    fn ids_are_compacted() {
        let g = parse_edge_list("10 30\n30 20\n".as_bytes()).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn malformed_line_reports_number() {
        let err = parse_edge_list("0 1\n# ok\n2 x\n".as_bytes()).unwrap_err();
        match err {
            GraphError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_edge_list("5\n".as_bytes()), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn csv_round_trip() {
        let b = UpdateBatch::from_edges(&[(0, 1), (2, 3)], &[(4, 5)]);
        let mut buf = Vec::new();
        write_batch_csv(&mut buf, &b).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "op,u,v\ni,0,1\ni,2,3\nd,4,5\n");
        let ops = read_batch_csv(buf.as_slice()).unwrap();
        assert_eq!(ops, b.to_ops());
    }
}
