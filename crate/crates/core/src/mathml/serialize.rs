use super::{MathDoc, NodeId, MATHML_NS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SerializeOptions {
    /// Indent nested elements by two spaces, one element per line.
    pub pretty: bool,
}

impl SerializeOptions {
    pub fn pretty() -> Self {
        SerializeOptions { pretty: true }
    }
}

fn escape_text(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
}

fn escape_attr(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}

struct Writer<'a> {
    doc: &'a MathDoc,
    pretty: bool,
    out: String,
}

impl Writer<'_> {
    fn indent(&mut self, depth: usize) {
        if self.pretty {
            for _ in 0..depth {
                self.out.push_str("  ");
            }
        }
    }

    fn newline(&mut self) {
        if self.pretty {
            self.out.push('\n');
        }
    }

    fn element(&mut self, id: NodeId, depth: usize, declare_ns: bool) {
        let node = self.doc.node(id);
        self.indent(depth);
        self.out.push('<');
        self.out.push_str(node.name());
        if declare_ns {
            self.out.push_str(" xmlns=\"");
            self.out.push_str(MATHML_NS);
            self.out.push('"');
        }
        for (k, v) in node.attributes() {
            self.out.push(' ');
            self.out.push_str(k);
            self.out.push_str("=\"");
            escape_attr(v, &mut self.out);
            self.out.push('"');
        }
        let children = node.child_ids();
        match (node.text(), children.is_empty()) {
            (None, true) => {
                self.out.push_str("/>");
                self.newline();
            }
            (Some(text), true) => {
                self.out.push('>');
                escape_text(text, &mut self.out);
                self.close(node.name());
            }
            (text, false) => {
                self.out.push('>');
                if let Some(text) = text {
                    escape_text(text, &mut self.out);
                }
                self.newline();
                for &child in children {
                    self.element(child, depth + 1, false);
                }
                self.indent(depth);
                self.close(node.name());
            }
        }
    }

    fn close(&mut self, name: &str) {
        self.out.push_str("</");
        self.out.push_str(name);
        self.out.push('>');
        self.newline();
    }
}

impl MathDoc {
    /// Deterministic XML text. The math element always carries the MathML
    /// default namespace declaration.
    pub fn serialize(&self, options: SerializeOptions) -> String {
        let mut w = Writer {
            doc: self,
            pretty: options.pretty,
            out: String::new(),
        };
        w.element(self.root(), 0, true);
        w.out
    }

    /// One subtree, without a namespace declaration.
    pub fn serialize_subtree(&self, id: NodeId, options: SerializeOptions) -> String {
        let mut w = Writer {
            doc: self,
            pretty: options.pretty,
            out: String::new(),
        };
        w.element(id, 0, id == self.root());
        w.out
    }
}

impl std::fmt::Display for MathDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.serialize(SerializeOptions::default()))
    }
}
