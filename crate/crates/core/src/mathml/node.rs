/// One XML element: local name, ordered attributes, trimmed text and children.
///
/// This is the owned, freely editable form of a tree. [`MathDoc`](super::MathDoc)
/// validates it and adds an indexed, immutable view.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MathNode {
    pub name: String,
    pub attributes: Vec<(String, String)>,
    pub text: Option<String>,
    pub children: Vec<MathNode>,
}

impl MathNode {
    pub fn new(name: impl Into<String>) -> Self {
        MathNode {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn with_attr(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.attributes.push((key.into(), value.into()));
        self
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }

    pub fn with_child(mut self, child: MathNode) -> Self {
        self.children.push(child);
        self
    }

    pub fn attr(&self, key: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Number of elements in this subtree, including `self`.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(MathNode::size).sum::<usize>()
    }

    /// Depth-first, parents before children.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a MathNode>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a MathNode;

    fn next(&mut self) -> Option<&'a MathNode> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}
