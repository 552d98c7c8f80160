//! Strict and lenient parsing.
//!
//! Lenient mode applies exactly three repairs, in order:
//!
//! 1. inject the MathML default namespace when the `math` element declares none,
//! 2. replace HTML5/MathML named entities with their characters,
//! 3. drop namespace prefixes that denote MathML (or are unbound) on elements
//!    and attributes.
//!
//! Strict mode turns each of these conditions into [`Error::RepairRequired`].
//! Everything else that is malformed is rejected in both modes.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::xml::{RawAttr, Token, Tokenizer};
use super::{Error, MathNode, NodeId, MATHML_NS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

/// Repair rules, ordered as the pipeline applies them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepairKind {
    NamespaceInserted,
    EntityReplaced,
    /// A MathML or unbound namespace prefix was removed from an element or
    /// attribute name.
    AttributeNamespaceDropped,
}

impl RepairKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepairKind::NamespaceInserted => "namespace-inserted",
            RepairKind::EntityReplaced => "entity-replaced",
            RepairKind::AttributeNamespaceDropped => "attribute-namespace-dropped",
        }
    }
}

impl fmt::Display for RepairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Repair {
    pub kind: RepairKind,
    /// Byte offset into the original input.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParseReport {
    /// Empty iff the input parsed with no rewriting.
    pub repairs: Vec<Repair>,
    pub dangling_xrefs: Vec<(NodeId, String)>,
}

impl ParseReport {
    pub fn repair_kinds(&self) -> Vec<RepairKind> {
        self.repairs.iter().map(|r| r.kind).collect()
    }
}

fn entity_table() -> &'static HashMap<&'static str, &'static str> {
    static TABLE: OnceLock<HashMap<&'static str, &'static str>> = OnceLock::new();
    TABLE.get_or_init(|| {
        entities::ENTITIES
            .iter()
            .filter_map(|e| {
                let name = e.entity.strip_prefix('&')?.strip_suffix(';')?;
                Some((name, e.characters))
            })
            .collect()
    })
}

fn malformed(offset: usize, message: impl Into<String>) -> Error {
    Error::MalformedInput {
        offset,
        message: message.into(),
    }
}

fn split_qname(name: &str) -> (Option<&str>, &str) {
    match name.split_once(':') {
        Some((prefix, local)) => (Some(prefix), local),
        None => (None, name),
    }
}

struct Frame {
    qname: String,
    node: MathNode,
    text: String,
    scope_len: usize,
}

struct Builder {
    mode: ParseMode,
    repairs: Vec<Repair>,
    /// In-scope namespace bindings; `None` prefix is the default namespace.
    scope: Vec<(Option<String>, String)>,
    stack: Vec<Frame>,
    root: Option<MathNode>,
}

impl Builder {
    fn repair(&mut self, kind: RepairKind, offset: usize) -> Result<(), Error> {
        match self.mode {
            ParseMode::Lenient => {
                self.repairs.push(Repair { kind, offset });
                Ok(())
            }
            ParseMode::Strict => Err(Error::RepairRequired { kind, offset }),
        }
    }

    fn lookup(&self, prefix: Option<&str>) -> Option<&str> {
        self.scope
            .iter()
            .rev()
            .find(|(p, _)| p.as_deref() == prefix)
            .map(|(_, uri)| uri.as_str())
    }

    fn decode(&mut self, raw: &str, at: usize) -> Result<String, Error> {
        let mut out = String::with_capacity(raw.len());
        let mut rest = raw;
        let mut offset = at;
        while let Some(amp) = rest.find('&') {
            out.push_str(&rest[..amp]);
            let ref_at = offset + amp;
            let tail = &rest[amp + 1..];
            let semi = tail
                .find(';')
                .filter(|&i| i > 0 && !tail[..i].contains(|c: char| c.is_whitespace() || c == '&'))
                .ok_or_else(|| malformed(ref_at, "bare `&` in character data"))?;
            let name = &tail[..semi];
            if let Some(num) = name.strip_prefix('#') {
                let code = match num.strip_prefix(['x', 'X']) {
                    Some(hex) => u32::from_str_radix(hex, 16),
                    None => num.parse::<u32>(),
                };
                let c = code
                    .ok()
                    .and_then(char::from_u32)
                    .ok_or_else(|| malformed(ref_at, format!("invalid character reference &{name};")))?;
                out.push(c);
            } else {
                match name {
                    "amp" => out.push('&'),
                    "lt" => out.push('<'),
                    "gt" => out.push('>'),
                    "quot" => out.push('"'),
                    "apos" => out.push('\''),
                    _ => match entity_table().get(name) {
                        Some(chars) => {
                            self.repair(RepairKind::EntityReplaced, ref_at)?;
                            out.push_str(chars);
                        }
                        None => return Err(malformed(ref_at, format!("unknown entity &{name};"))),
                    },
                }
            }
            let consumed = amp + 1 + semi + 1;
            rest = &rest[consumed..];
            offset += consumed;
        }
        out.push_str(rest);
        Ok(out)
    }

    fn start(&mut self, qname: &str, attrs: &[RawAttr<'_>], at: usize) -> Result<(), Error> {
        if self.root.is_some() {
            return Err(malformed(at, "more than one top-level element"));
        }
        let is_root = self.stack.is_empty();
        let (prefix, local) = split_qname(qname);
        let scope_len = self.scope.len();

        let mut declared = vec![None; attrs.len()];
        for (i, a) in attrs.iter().enumerate() {
            let bound = if a.name == "xmlns" {
                None
            } else if let Some(p) = a.name.strip_prefix("xmlns:") {
                Some(p.to_owned())
            } else {
                continue;
            };
            let uri = self.decode(a.value, a.value_at)?;
            self.scope.push((bound, uri.clone()));
            declared[i] = Some(uri);
        }

        if is_root {
            if local != "math" {
                return Err(malformed(at, format!("expected a <math> element, found <{qname}>")));
            }
            let has_default = attrs.iter().any(|a| a.name == "xmlns");
            let prefix_declared = prefix.is_some_and(|p| {
                attrs
                    .iter()
                    .any(|a| a.name.strip_prefix("xmlns:") == Some(p))
            });
            if !has_default && !prefix_declared {
                self.repair(RepairKind::NamespaceInserted, at)?;
                self.scope.push((None, MATHML_NS.to_owned()));
            }
        }

        let name = match prefix {
            None => local.to_owned(),
            Some("xml") => qname.to_owned(),
            Some(p) => match self.lookup(Some(p)) {
                Some(uri) if uri != MATHML_NS => qname.to_owned(),
                _ => {
                    self.repair(RepairKind::AttributeNamespaceDropped, at + 1)?;
                    local.to_owned()
                }
            },
        };
        if is_root && name != "math" {
            return Err(malformed(at, "the math element is not in the MathML namespace"));
        }
        if is_root && prefix.is_none() && self.lookup(None) != Some(MATHML_NS) {
            return Err(malformed(at, "the math element is not in the MathML namespace"));
        }

        let mut node = MathNode::new(name);
        for (a, uri) in attrs.iter().zip(declared) {
            let (a_prefix, a_local) = split_qname(a.name);
            if let Some(uri) = uri {
                if uri != MATHML_NS {
                    node.attributes.push((a.name.to_owned(), uri));
                }
                continue;
            }
            let key = match a_prefix {
                None | Some("xml") => a.name.to_owned(),
                Some(p) => match self.lookup(Some(p)) {
                    Some(uri) if uri != MATHML_NS => a.name.to_owned(),
                    _ => {
                        self.repair(RepairKind::AttributeNamespaceDropped, a.at)?;
                        a_local.to_owned()
                    }
                },
            };
            if node.attr(&key).is_some() {
                return Err(malformed(a.at, format!("duplicate attribute `{key}`")));
            }
            let value = self.decode(a.value, a.value_at)?;
            node.attributes.push((key, value));
        }

        self.stack.push(Frame {
            qname: qname.to_owned(),
            node,
            text: String::new(),
            scope_len,
        });
        Ok(())
    }

    fn end(&mut self, qname: &str, at: usize) -> Result<(), Error> {
        let frame = self
            .stack
            .pop()
            .ok_or_else(|| malformed(at, format!("unexpected end tag </{qname}>")))?;
        if frame.qname != qname {
            return Err(malformed(
                at,
                format!("end tag </{qname}> does not match <{}>", frame.qname),
            ));
        }
        self.scope.truncate(frame.scope_len);
        let mut node = frame.node;
        let text = frame.text.trim();
        if !text.is_empty() {
            node.text = Some(text.to_owned());
        }
        match self.stack.last_mut() {
            Some(parent) => parent.node.children.push(node),
            None => self.root = Some(node),
        }
        Ok(())
    }

    fn text(&mut self, text: &str, at: usize) -> Result<(), Error> {
        match self.stack.last_mut() {
            Some(frame) => {
                frame.text.push_str(text);
                Ok(())
            }
            None if text.trim().is_empty() => Ok(()),
            None => Err(malformed(at, "character data outside the math element")),
        }
    }
}

/// Parses `input` into an owned tree and the list of applied repairs.
pub(crate) fn parse_tree(input: &str, mode: ParseMode) -> Result<(MathNode, Vec<Repair>), Error> {
    let mut builder = Builder {
        mode,
        repairs: Vec::new(),
        scope: Vec::new(),
        stack: Vec::new(),
        root: None,
    };
    let mut tokens = Tokenizer::new(input);
    while let Some(token) = tokens.next_token()? {
        match token {
            Token::Start { name, attrs, empty, at } => {
                builder.start(name, &attrs, at)?;
                if empty {
                    builder.end(name, at)?;
                }
            }
            Token::End { name, at } => builder.end(name, at)?,
            Token::Text { raw, at } => {
                if builder.stack.is_empty() && raw.trim().is_empty() {
                    continue;
                }
                let text = builder.decode(raw, at)?;
                builder.text(&text, at)?;
            }
            Token::CData { text, at } => builder.text(text, at)?,
        }
    }
    if let Some(open) = builder.stack.last() {
        return Err(malformed(input.len(), format!("unclosed <{}>", open.qname)));
    }
    let root = builder
        .root
        .ok_or_else(|| malformed(0, "no math element found"))?;
    let mut repairs = builder.repairs;
    repairs.sort();
    Ok((root, repairs))
}
