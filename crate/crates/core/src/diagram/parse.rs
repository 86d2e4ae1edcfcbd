use serde::{Deserialize, Serialize};

use super::{DiagramError, PlanarDiagram};

/// JSON mirror of the PD text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub crossings: Vec<[u32; 4]>,
    #[serde(default)]
    pub loops: Vec<u32>,
}

impl PdJson {
    pub fn into_diagram(self) -> Result<PlanarDiagram, DiagramError> {
        PlanarDiagram::new(self.name, &self.crossings, &self.loops)
    }
}

pub fn parse_pd_json(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let raw: PdJson = serde_json::from_str(text).map_err(|e| DiagramError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.into_diagram()
}

/// Parses PD text: `X[a,b,c,d]` and `O[k]` tokens separated by whitespace
/// (commas between tokens are tolerated), `#` comments, and an optional
/// `name: ...` line.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut name = None;
    let mut crossings = Vec::new();
    let mut loops = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(k) => &raw_line[..k],
            None => raw_line,
        };
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("name:") {
            if name.is_some() {
                return Err(err(line_no, 1, "duplicate name header"));
            }
            name = Some(rest.trim().to_string());
            continue;
        }
        let mut lexer = Lexer {
            chars: line.char_indices().collect(),
            pos: 0,
            line: line_no,
        };
        while let Some(tok) = lexer.next_token()? {
            match tok {
                Token::Crossing(t) => crossings.push(t),
                Token::Loop(k) => loops.push(k),
            }
        }
    }
    PlanarDiagram::new(name, &crossings, &loops)
}

fn err(line: usize, column: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Parse {
        line,
        column,
        message: message.into(),
    }
}

enum Token {
    Crossing([u32; 4]),
    Loop(u32),
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == ',') {
            self.pos += 1;
        }
    }

    fn skip_whitespace(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: char) -> Result<(), DiagramError> {
        self.skip_whitespace();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(err(
                self.line,
                self.column(),
                format!("expected '{want}', found '{c}'"),
            )),
            None => Err(err(
                self.line,
                self.column(),
                format!("expected '{want}', found end of line"),
            )),
        }
    }

    fn label(&mut self) -> Result<u32, DiagramError> {
        self.skip_whitespace();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self
                .peek()
                .map_or("end of line".to_string(), |c| format!("'{c}'"));
            return Err(err(
                self.line,
                start + 1,
                format!("expected a positive integer label, found {found}"),
            ));
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        match digits.parse::<u32>() {
            Ok(0) => Err(err(self.line, start + 1, "labels must be positive")),
            Ok(v) => Ok(v),
            Err(_) => Err(err(
                self.line,
                start + 1,
                format!("label {digits} is too large"),
            )),
        }
    }

    /// Comma-separated labels up to the closing bracket.
    fn labels(&mut self) -> Result<Vec<u32>, DiagramError> {
        let mut out = vec![self.label()?];
        loop {
            self.skip_whitespace();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.label()?);
                }
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => {
                    return Err(err(
                        self.line,
                        self.column(),
                        format!("expected ',' or ']', found '{c}'"),
                    ))
                }
                None => return Err(err(self.line, self.column(), "unterminated bracket")),
            }
        }
    }

    fn next_token(&mut self) -> Result<Option<Token>, DiagramError> {
        self.skip_separators();
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let column = self.column();
        self.pos += 1;
        match c {
            'X' => {
                self.expect('[')?;
                let labels = self.labels()?;
                let tuple: [u32; 4] = labels.as_slice().try_into().map_err(|_| {
                    err(
                        self.line,
                        column,
                        format!("crossing has {} labels (expected 4)", labels.len()),
                    )
                })?;
                Ok(Some(Token::Crossing(tuple)))
            }
            'O' => {
                self.expect('[')?;
                let labels = self.labels()?;
                match labels.as_slice() {
                    [k] => Ok(Some(Token::Loop(*k))),
                    _ => Err(err(
                        self.line,
                        column,
                        format!("loop has {} labels (expected 1)", labels.len()),
                    )),
                }
            }
            other => Err(err(
                self.line,
                column,
                format!("unexpected character '{other}'"),
            )),
        }
    }
}
