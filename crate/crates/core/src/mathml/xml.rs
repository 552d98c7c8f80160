//! Minimal XML tokenizer. Keeps byte offsets into the original input so the
//! repair pipeline can report where each rule fired.
//!
//! Supported: elements, attributes, character data, character and entity
//! references (left undecoded), CDATA, comments, processing instructions and
//! a DOCTYPE without internal subset. Anything else is a syntax error.

use super::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawAttr<'a> {
    pub name: &'a str,
    pub value: &'a str,
    pub at: usize,
    pub value_at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token<'a> {
    Start {
        name: &'a str,
        attrs: Vec<RawAttr<'a>>,
        empty: bool,
        at: usize,
    },
    End {
        name: &'a str,
        at: usize,
    },
    /// Undecoded character data.
    Text { raw: &'a str, at: usize },
    /// CDATA content, taken literally.
    CData { text: &'a str, at: usize },
}

pub(crate) struct Tokenizer<'a> {
    src: &'a str,
    pos: usize,
}

fn malformed(offset: usize, message: impl Into<String>) -> Error {
    Error::MalformedInput {
        offset,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    !(c.is_whitespace() || matches!(c, '<' | '>' | '/' | '=' | '"' | '\'' | '&' | '?' | '!'))
}

impl<'a> Tokenizer<'a> {
    pub fn new(src: &'a str) -> Self {
        let pos = if src.starts_with('\u{feff}') { 3 } else { 0 };
        Tokenizer { src, pos }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn skip_past(&mut self, terminator: &str, what: &str) -> Result<&'a str, Error> {
        let start = self.pos;
        match self.rest().find(terminator) {
            Some(i) => {
                let body = &self.src[start..start + i];
                self.pos = start + i + terminator.len();
                Ok(body)
            }
            None => Err(malformed(start, format!("unterminated {what}"))),
        }
    }

    fn name(&mut self) -> Result<&'a str, Error> {
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !is_name_char(c))
            .map_or(self.rest().len(), |(i, _)| i);
        if len == 0 {
            return Err(malformed(start, "expected a name"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn start_tag(&mut self) -> Result<Token<'a>, Error> {
        let at = self.pos;
        self.pos += 1;
        let name = self.name()?;
        let mut attrs: Vec<RawAttr<'a>> = Vec::new();
        loop {
            let before_ws = self.pos;
            self.skip_ws();
            let rest = self.rest();
            if rest.starts_with("/>") {
                self.pos += 2;
                return Ok(Token::Start { name, attrs, empty: true, at });
            }
            if rest.starts_with('>') {
                self.pos += 1;
                return Ok(Token::Start { name, attrs, empty: false, at });
            }
            if rest.is_empty() {
                return Err(malformed(at, format!("unterminated start tag <{name}>")));
            }
            if self.pos == before_ws {
                return Err(malformed(self.pos, "expected whitespace before attribute"));
            }
            let attr_at = self.pos;
            let attr_name = self.name()?;
            self.skip_ws();
            if !self.rest().starts_with('=') {
                return Err(malformed(self.pos, format!("attribute `{attr_name}` has no value")));
            }
            self.pos += 1;
            self.skip_ws();
            let quote = match self.rest().chars().next() {
                Some(q @ ('"' | '\'')) => q,
                _ => return Err(malformed(self.pos, "attribute value must be quoted")),
            };
            self.pos += 1;
            let value_at = self.pos;
            let close = self
                .rest()
                .find(quote)
                .ok_or_else(|| malformed(value_at, "unterminated attribute value"))?;
            let value = &self.src[value_at..value_at + close];
            if let Some(i) = value.find('<') {
                return Err(malformed(value_at + i, "`<` in attribute value"));
            }
            self.pos = value_at + close + 1;
            if attrs.iter().any(|a| a.name == attr_name) {
                return Err(malformed(attr_at, format!("duplicate attribute `{attr_name}`")));
            }
            attrs.push(RawAttr { name: attr_name, value, at: attr_at, value_at });
        }
    }

    fn end_tag(&mut self) -> Result<Token<'a>, Error> {
        let at = self.pos;
        self.pos += 2;
        let name = self.name()?;
        self.skip_ws();
        if !self.rest().starts_with('>') {
            return Err(malformed(self.pos, format!("malformed end tag </{name}")));
        }
        self.pos += 1;
        Ok(Token::End { name, at })
    }

    pub fn next_token(&mut self) -> Result<Option<Token<'a>>, Error> {
        loop {
            let rest = self.rest();
            if rest.is_empty() {
                return Ok(None);
            }
            let at = self.pos;
            if !rest.starts_with('<') {
                let len = rest.find('<').unwrap_or(rest.len());
                self.pos += len;
                return Ok(Some(Token::Text { raw: &rest[..len], at }));
            }
            if rest.starts_with("<!--") {
                self.pos += 4;
                self.skip_past("-->", "comment")?;
            } else if rest.starts_with("<![CDATA[") {
                self.pos += 9;
                let text = self.skip_past("]]>", "CDATA section")?;
                return Ok(Some(Token::CData { text, at }));
            } else if rest.starts_with("<?") {
                self.pos += 2;
                self.skip_past("?>", "processing instruction")?;
            } else if rest.starts_with("<!DOCTYPE") {
                let body = self.skip_past(">", "DOCTYPE")?;
                if body.contains('[') {
                    return Err(malformed(at, "DOCTYPE internal subsets are not supported"));
                }
            } else if rest.starts_with("</") {
                return self.end_tag().map(Some);
            } else {
                return self.start_tag().map(Some);
            }
        }
    }
}
