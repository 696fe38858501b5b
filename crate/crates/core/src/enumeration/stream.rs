use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

/// What to do with a line that is not valid graph6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MalformedPolicy {
    /// Yield the error and stop.
    #[default]
    FailFast,
    /// Log a warning and continue with the next line.
    Skip,
}

/// Reads one graph per line. Line numbers in errors are 1-based.
pub struct Graph6Reader<R> {
    input: R,
    policy: MalformedPolicy,
    line: usize,
    buf: String,
    failed: bool,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(input: R, policy: MalformedPolicy) -> Self {
        Graph6Reader {
            input,
            policy,
            line: 0,
            buf: String::new(),
            failed: false,
        }
    }

    /// Lines read so far.
    pub fn line(&self) -> usize {
        self.line
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Result<Graph>> {
        if self.failed {
            return None;
        }
        loop {
            self.buf.clear();
            match self.input.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e.into()));
                }
            }
            self.line += 1;
            let text = self.buf.trim_end_matches(['\n', '\r']);
            let text = if self.line == 1 {
                text.strip_prefix(">>graph6<<").unwrap_or(text)
            } else {
                text
            };
            match graph6::decode(text) {
                Ok(g) => return Some(Ok(g)),
                Err(e) => {
                    let err = Error::Line {
                        line: self.line,
                        cause: Box::new(e),
                    };
                    match self.policy {
                        MalformedPolicy::FailFast => {
                            self.failed = true;
                            return Some(Err(err));
                        }
                        MalformedPolicy::Skip => log::warn!("skipping malformed input: {err}"),
                    }
                }
            }
        }
    }
}

pub fn read_graph6<R: BufRead>(input: R, policy: MalformedPolicy) -> Graph6Reader<R> {
    Graph6Reader::new(input, policy)
}

/// Writes each graph as one newline-terminated graph6 line.
pub fn write_graph6<'a, W: Write>(
    sink: &mut W,
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<usize> {
    let mut count = 0;
    for g in graphs {
        writeln!(sink, "{}", graph6::encode(g))?;
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_lines() {
        let graphs: Vec<_> = read_graph6("Bw\nBg\r\n@\n".as_bytes(), MalformedPolicy::FailFast)
            .collect::<Result<_>>()
            .unwrap();
        assert_eq!(
            graphs,
            vec![
                Graph::complete(3).unwrap(),
                Graph::path(3).unwrap(),
                Graph::empty(1).unwrap()
            ]
        );
        assert_eq!(
            read_graph6("".as_bytes(), MalformedPolicy::FailFast).count(),
            0
        );
    }

    #[test]
    fn accepts_header() {
        let g: Vec<_> =
            read_graph6(">>graph6<<Bw\n".as_bytes(), MalformedPolicy::FailFast).collect();
        assert_eq!(g, vec![Ok(Graph::complete(3).unwrap())]);
    }

    #[test]
    fn malformed_lines() {
        let out: Vec<_> =
            read_graph6("Bw\nB\nBg\n".as_bytes(), MalformedPolicy::FailFast).collect();
        assert_eq!(out.len(), 2);
        assert!(matches!(out[1], Err(Error::Line { line: 2, .. })));
        let out: Vec<_> = read_graph6("Bw\nB\nBg\n".as_bytes(), MalformedPolicy::Skip).collect();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn writes_lines() {
        let mut buf = Vec::new();
        let gs = [Graph::complete(3).unwrap(), Graph::empty(1).unwrap()];
        assert_eq!(write_graph6(&mut buf, &gs).unwrap(), 2);
        assert_eq!(String::from_utf8(buf).unwrap(), "Bw\n@\n");
    }
}
