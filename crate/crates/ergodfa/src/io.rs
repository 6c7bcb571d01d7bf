//! Reading and writing automata.
//!
//! Two formats are supported.
//!
//! **Text** — line 1 is `n r q0`; the next `n` lines give each state's
//! transitions (for a DFA, `r` space-separated successor ids; for an NFA, `r`
//! semicolon-separated comma-lists of ids, possibly empty); the last line has
//! the `n` termination bits, space-separated. The 2-state even-parity DFA:
//!
//! ```text
//! 2 2 0
//! 1 0
//! 0 1
//! 1 0
//! ```
//!
//! **JSON** — an object with fields `n`, `r`, `initial`, `transitions`
//! (per-state rows: ids for a DFA, id-lists for an NFA) and `termination`
//! (0/1 bits). JSON is the canonical interchange format for the command-line
//! tools; readers sniff the format from the first non-blank byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{Automaton, AutomataError, Dfa, Nfa};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid automaton: {0}")]
    Invalid(#[from] AutomataError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

struct Header {
    n: usize,
    r: usize,
    initial: usize,
    body: Vec<(usize, String)>,
}

fn split_header(text: &str) -> Result<Header, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .skip_while(|(_, l)| l.is_empty());
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(line_no, "header must be `n r q0`"));
    }
    let parse = |s: &str, what: &str| {
        s.parse::<usize>().map_err(|_| parse_err(line_no, format!("bad {what}: {s:?}")))
    };
    let mut body: Vec<(usize, String)> = lines.collect();
    // Interior blank lines are legitimate NFA rows (all-empty cells under a
    // one-symbol alphabet); only trailing blanks are noise.
    while body.last().is_some_and(|(_, l)| l.is_empty()) {
        body.pop();
    }
    let header = Header {
        n: parse(fields[0], "state count")?,
        r: parse(fields[1], "alphabet size")?,
        initial: parse(fields[2], "initial state")?,
        body,
    };
    let expected = header.n + 1;
    if header.body.len() != expected {
        return Err(parse_err(
            header.body.last().map_or(line_no, |(l, _)| *l),
            format!("expected {expected} lines after the header, got {}", header.body.len()),
        ));
    }
    Ok(header)
}

fn parse_bits(line_no: usize, line: &str, n: usize) -> Result<Vec<bool>, FormatError> {
    let bits: Result<Vec<bool>, FormatError> = line
        .split_whitespace()
        .map(|t| match t {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(parse_err(line_no, format!("termination bit must be 0 or 1, got {other:?}"))),
        })
        .collect();
    let bits = bits?;
    if bits.len() != n {
        return Err(parse_err(line_no, format!("expected {n} termination bits, got {}", bits.len())));
    }
    Ok(bits)
}

pub fn parse_dfa_text(text: &str) -> Result<Dfa, FormatError> {
    let h = split_header(text)?;
    let mut table = Vec::with_capacity(h.n * h.r);
    for (line_no, line) in &h.body[..h.n] {
        let ids: Result<Vec<usize>, FormatError> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(*line_no, format!("bad state id {t:?}"))))
            .collect();
        let ids = ids?;
        if ids.len() != h.r {
            return Err(parse_err(*line_no, format!("expected {} successors, got {}", h.r, ids.len())));
        }
        table.extend(ids);
    }
    let (bit_line_no, bit_line) = &h.body[h.n];
    let termination = parse_bits(*bit_line_no, bit_line, h.n)?;
    Ok(Dfa::new(h.n, h.r, h.initial, table, termination)?)
}

pub fn parse_nfa_text(text: &str) -> Result<Nfa, FormatError> {
    let h = split_header(text)?;
    let mut cells = Vec::with_capacity(h.n * h.r);
    for (line_no, line) in &h.body[..h.n] {
        let groups: Vec<&str> = line.split(';').collect();
        if groups.len() != h.r {
            return Err(parse_err(
                *line_no,
                format!("expected {} semicolon-separated sets, got {}", h.r, groups.len()),
            ));
        }
        for group in groups {
            let group = group.trim();
            let ids: Result<Vec<usize>, FormatError> = group
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(*line_no, format!("bad state id {t:?}"))))
                .collect();
            cells.push(ids?);
        }
    }
    let (bit_line_no, bit_line) = &h.body[h.n];
    let termination = parse_bits(*bit_line_no, bit_line, h.n)?;
    Ok(Nfa::from_cells(h.n, h.r, h.initial, cells, termination)?)
}

fn bits_line(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
}

pub fn write_dfa_text(a: &Dfa) -> String {
    let mut out = format!("{} {} {}\n", a.state_count(), a.alphabet_size(), a.initial_state());
    for q in 0..a.state_count() {
        let row: Vec<String> =
            (0..a.alphabet_size()).map(|s| a.transition(q, s).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&bits_line(a.termination_bits()));
    out.push('\n');
    out
}

pub fn write_nfa_text(a: &Nfa) -> String {
    let mut out = format!("{} {} {}\n", a.state_count(), a.alphabet_size(), a.initial_state());
    for q in 0..a.state_count() {
        let row: Vec<String> = (0..a.alphabet_size())
            .map(|s| {
                a.successors(q, s).iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            })
            .collect();
        out.push_str(&row.join(";"));
        out.push('\n');
    }
    out.push_str(&bits_line(a.termination_bits()));
    out.push('\n');
    out
}

/// JSON shape of a DFA.
#[derive(Debug, Serialize, Deserialize)]
pub struct DfaJson {
    pub n: usize,
    pub r: usize,
    pub initial: usize,
    pub transitions: Vec<Vec<usize>>,
    pub termination: Vec<u8>,
}

impl From<&Dfa> for DfaJson {
    fn from(a: &Dfa) -> DfaJson {
        DfaJson {
            n: a.state_count(),
            r: a.alphabet_size(),
            initial: a.initial_state(),
            transitions: (0..a.state_count())
                .map(|q| (0..a.alphabet_size()).map(|s| a.transition(q, s)).collect())
                .collect(),
            termination: a.termination_bits().iter().map(|&b| b as u8).collect(),
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = FormatError;
    fn try_from(j: DfaJson) -> Result<Dfa, FormatError> {
        let rows_len: usize = j.transitions.iter().map(Vec::len).sum();
        if j.transitions.len() != j.n || rows_len != j.n * j.r {
            return Err(AutomataError::TableShape { expected: j.n * j.r, found: rows_len }.into());
        }
        let table = j.transitions.into_iter().flatten().collect();
        Ok(Dfa::new(j.n, j.r, j.initial, table, j.termination.iter().map(|&b| b != 0).collect())?)
    }
}

/// JSON shape of an NFA.
#[derive(Debug, Serialize, Deserialize)]
pub struct NfaJson {
    pub n: usize,
    pub r: usize,
    pub initial: usize,
    pub transitions: Vec<Vec<Vec<usize>>>,
    pub termination: Vec<u8>,
}

impl From<&Nfa> for NfaJson {
    fn from(a: &Nfa) -> NfaJson {
        NfaJson {
            n: a.state_count(),
            r: a.alphabet_size(),
            initial: a.initial_state(),
            transitions: (0..a.state_count())
                .map(|q| (0..a.alphabet_size()).map(|s| a.successors(q, s).to_vec()).collect())
                .collect(),
            termination: a.termination_bits().iter().map(|&b| b as u8).collect(),
        }
    }
}

impl TryFrom<NfaJson> for Nfa {
    type Error = FormatError;
    fn try_from(j: NfaJson) -> Result<Nfa, FormatError> {
        if j.transitions.len() != j.n || j.transitions.iter().any(|row| row.len() != j.r) {
            return Err(AutomataError::TableShape {
                expected: j.n * j.r,
                found: j.transitions.iter().map(Vec::len).sum(),
            }
            .into());
        }
        let cells = j.transitions.into_iter().flatten().collect();
        Ok(Nfa::from_cells(
            j.n,
            j.r,
            j.initial,
            cells,
            j.termination.iter().map(|&b| b != 0).collect(),
        )?)
    }
}

pub fn dfa_to_json(a: &Dfa) -> String {
    let mut s = serde_json::to_string_pretty(&DfaJson::from(a)).expect("DFA serialization");
    s.push('\n');
    s
}

pub fn nfa_to_json(a: &Nfa) -> String {
    let mut s = serde_json::to_string_pretty(&NfaJson::from(a)).expect("NFA serialization");
    s.push('\n');
    s
}

pub fn parse_dfa_json(text: &str) -> Result<Dfa, FormatError> {
    Dfa::try_from(serde_json::from_str::<DfaJson>(text)?)
}

pub fn parse_nfa_json(text: &str) -> Result<Nfa, FormatError> {
    Nfa::try_from(serde_json::from_str::<NfaJson>(text)?)
}

/// Parses a DFA from either format, sniffing JSON by a leading `{`.
pub fn parse_dfa(text: &str) -> Result<Dfa, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_dfa_json(text)
    } else {
        parse_dfa_text(text)
    }
}

pub fn read_dfa_file(path: &std::path::Path) -> Result<Dfa, FormatError> {
    parse_dfa(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity() -> Dfa {
        Dfa::from_rows(0, vec![vec![1, 0], vec![0, 1]], vec![true, false]).unwrap()
    }

    #[test]
    fn dfa_text_round_trip() {
        let a = parity();
        let text = write_dfa_text(&a);
        assert_eq!(text, "2 2 0\n1 0\n0 1\n1 0\n");
        assert_eq!(parse_dfa_text(&text).unwrap(), a);
    }

    #[test]
    fn nfa_text_round_trip_with_empty_cells() {
        let a = Nfa::from_rows(
            1,
            vec![vec![vec![0, 1], vec![]], vec![vec![1], vec![0]]],
            vec![false, true],
        )
        .unwrap();
        let text = write_nfa_text(&a);
        assert_eq!(text, "2 2 1\n0,1;\n1;0\n0 1\n");
        assert_eq!(parse_nfa_text(&text).unwrap(), a);
    }

    #[test]
    fn dfa_json_round_trip() {
        let a = parity();
        let json = dfa_to_json(&a);
        assert_eq!(parse_dfa_json(&json).unwrap(), a);
        assert_eq!(parse_dfa(&json).unwrap(), a);
        assert_eq!(parse_dfa(&write_dfa_text(&a)).unwrap(), a);
    }

    #[test]
    fn nfa_json_round_trip() {
        let a = Nfa::from_rows(
            0,
            vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0]]],
            vec![true, false],
        )
        .unwrap();
        let json = nfa_to_json(&a);
        assert_eq!(parse_nfa_json(&json).unwrap(), a);
    }

    #[test]
    fn malformed_inputs_are_reported_with_lines() {
        let cases = [
            ("", "empty input"),
            ("2 2\n", "header"),
            ("2 2 0\n0 0\n1 1\n", "lines after the header"),
            ("1 2 0\n0\n1\n", "successors"),
            ("1 2 0\n0 0\n2\n", "termination bit"),
            ("1 2 0\n0 0\n1 1\n", "termination bits"),
        ];
        for (input, needle) in cases {
            let err = parse_dfa_text(input).unwrap_err().to_string();
            assert!(err.contains(needle), "{input:?} -> {err}");
        }
        // Structural validation still applies after parsing.
        assert!(matches!(
            parse_dfa_text("1 1 0\n4\n0\n"),
            Err(FormatError::Invalid(AutomataError::StateOutOfRange { .. }))
        ));
    }

    #[test]
    fn json_shape_errors() {
        assert!(parse_dfa_json("{}").is_err());
        let short = r#"{"n":2,"r":1,"initial":0,"transitions":[[0]],"termination":[1,0]}"#;
        assert!(matches!(
            parse_dfa_json(short),
            Err(FormatError::Invalid(AutomataError::TableShape { .. }))
        ));
    }
}
