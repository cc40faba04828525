//! Text serialization of snakes.
//!
//! ```text
//! snake v1
//! n=<degree> construction=<id> size=<M>
//! <initial permutation, space separated>
//! <transition indices, 60 per line>
//! ```

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transition};
use crate::snake::Snake;

const MAGIC: &str = "snake v1";
const PER_LINE: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnakeFile {
    pub construction: String,
    /// Size as written in the header; not trusted.
    pub declared_size: usize,
    pub snake: Snake,
}

impl SnakeFile {
    pub fn new(construction: impl Into<String>, snake: Snake) -> Self {
        Self { construction: construction.into(), declared_size: snake.len(), snake }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!(
            "n={} construction={} size={}\n",
            self.snake.degree(),
            self.construction,
            self.declared_size
        ));
        let init: Vec<String> = self.snake.initial().as_slice().iter().map(u8::to_string).collect();
        out.push_str(&init.join(" "));
        out.push('\n');
        for line in self.snake.transitions().chunks(PER_LINE) {
            let idx: Vec<String> = line.iter().map(|t| t.index().to_string()).collect();
            out.push_str(&idx.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, MAGIC)) => {}
            _ => return Err(err(1, "expected header \"snake v1\"")),
        }
        let (_, header) = lines.next().ok_or_else(|| err(2, "missing parameter line"))?;
        let mut n = None;
        let mut construction = None;
        let mut size = None;
        for field in header.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| err(2, "expected key=value"))?;
            match key {
                "n" => n = Some(value.parse::<usize>().map_err(|e| err(2, &e.to_string()))?),
                "construction" => construction = Some(value.to_string()),
                "size" => size = Some(value.parse::<usize>().map_err(|e| err(2, &e.to_string()))?),
                _ => return Err(err(2, &format!("unknown key {key}"))),
            }
        }
        let (Some(n), Some(construction), Some(declared_size)) = (n, construction, size) else {
            return Err(err(2, "need n, construction and size"));
        };

        let (_, init) = lines.next().ok_or_else(|| err(3, "missing initial permutation"))?;
        let entries: Vec<u8> = init
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e: std::num::ParseIntError| err(3, &e.to_string()))?;
        if entries.len() != n {
            return Err(err(3, &format!("expected {n} entries, found {}", entries.len())));
        }
        let initial = Permutation::new(&entries).map_err(|e| err(3, &e.to_string()))?;

        let mut transitions = Vec::with_capacity(declared_size);
        for (no, line) in lines {
            for tok in line.split_whitespace() {
                let i: usize = tok.parse().map_err(|e: std::num::ParseIntError| err(no, &e.to_string()))?;
                if i > n {
                    return Err(err(no, &format!("t{i} out of range for n={n}")));
                }
                transitions.push(Transition::new(i).map_err(|e| err(no, &e.to_string()))?);
            }
        }
        if transitions.is_empty() {
            return Err(err(4, "no transitions"));
        }
        Ok(Self { construction, declared_size, snake: Snake::new(initial, transitions)? })
    }
}
