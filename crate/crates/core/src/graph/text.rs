//! Bracket text format.
//!
//! ```text
//! graph := "0" | tree ( "|" pair ( "," pair )* )?
//! tree  := leaf | "<" node node ">" | "<" leaf ">"
//! node  := leaf | tree
//! leaf  := [A-Za-z0-9_]+
//! pair  := int "~" int        (1-based leaf positions)
//! ```
//!
//! Leaves at loop positions may carry any identifier; canonical output
//! writes `_` there.

use super::{Shape, Slot, TaggedGraph};
use crate::error::{Error, Result};

pub(super) fn render(g: &TaggedGraph) -> String {
    fn tree(shape: &Shape, slots: &[Slot], pos: &mut usize, out: &mut String) {
        match shape {
            Shape::Leaf => {
                match &slots[*pos] {
                    Slot::Free(l) => out.push_str(l),
                    Slot::Loop(_) => out.push('_'),
                }
                *pos += 1;
            }
            Shape::Node(l, r) => {
                out.push('<');
                tree(l, slots, pos, out);
                out.push(' ');
                tree(r, slots, pos, out);
                out.push('>');
            }
        }
    }
    let Some((shape, slots)) = g.parts() else {
        return "0".to_string();
    };
    let mut out = String::new();
    if let Shape::Leaf = shape {
        out.push('<');
        tree(shape, slots, &mut 0, &mut out);
        out.push('>');
    } else {
        tree(shape, slots, &mut 0, &mut out);
    }
    let pairs = g.loop_positions();
    if !pairs.is_empty() {
        out.push_str(" | ");
        let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}~{b}")).collect();
        out.push_str(&body.join(", "));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Tilde,
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '<' => Tok::Open,
            '>' => Tok::Close,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '~' => Tok::Tilde,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Ident(s)));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn node(&mut self, leaves: &mut Vec<String>) -> Result<Shape> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                leaves.push(s);
                Ok(Shape::Leaf)
            }
            Some(Tok::Open) => {
                self.at += 1;
                let left = self.node(leaves)?;
                if self.peek() == Some(&Tok::Close) {
                    if left != Shape::Leaf {
                        return self.err("a bracket must hold two nodes");
                    }
                    self.at += 1;
                    return Ok(Shape::Leaf);
                }
                let right = self.node(leaves)?;
                self.expect(Tok::Close, "`>`")?;
                Ok(Shape::node(left, right))
            }
            _ => self.err("expected a leaf or `<`"),
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => match s.parse::<usize>() {
                Ok(v) => {
                    self.at += 1;
                    Ok(v)
                }
                Err(_) => self.err("expected a leaf position"),
            },
            _ => self.err("expected a leaf position"),
        }
    }
}

/// Parses bracket text into a graph.
pub fn parse_graph(text: &str) -> Result<TaggedGraph> {
    if text.trim() == "0" {
        return Ok(TaggedGraph::empty());
    }
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let mut leaves = Vec::new();
    let shape = p.node(&mut leaves)?;
    let mut pairs = Vec::new();
    if p.peek() == Some(&Tok::Bar) {
        p.at += 1;
        loop {
            let a = p.int()?;
            p.expect(Tok::Tilde, "`~`")?;
            let b = p.int()?;
            pairs.push((a, b));
            if p.peek() == Some(&Tok::Comma) {
                p.at += 1;
            } else {
                break;
            }
        }
    }
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut slots: Vec<Option<Slot>> = leaves.into_iter().map(|l| Some(Slot::Free(l))).collect();
    for (id, &(a, b)) in pairs.iter().enumerate() {
        for x in [a, b] {
            if x == 0 || x > slots.len() {
                return Err(Error::InvalidLoop(format!(
                    "position {x} outside 1..={}",
                    slots.len()
                )));
            }
        }
        if a == b {
            return Err(Error::InvalidLoop(format!("pair {a}~{b} joins a leaf to itself")));
        }
        for x in [a, b] {
            match slots[x - 1] {
                Some(Slot::Loop(_)) => {
                    return Err(Error::InvalidLoop(format!("position {x} used by two pairs")))
                }
                _ => slots[x - 1] = Some(Slot::Loop(id as u32 + 1)),
            }
        }
    }
    TaggedGraph::new(shape, slots.into_iter().map(|s| s.expect("filled")).collect())
}
