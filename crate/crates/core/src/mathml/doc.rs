use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::Range;

use super::parse::{parse_tree, ParseMode, ParseReport};
use super::{
    is_content_element, Branch, Error, MathNode, NodeId, Scope, CONTENT_ENCODING,
    PRESENTATION_ENCODING, TEX_ENCODING,
};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Slot {
    name: String,
    attributes: Vec<(String, String)>,
    text: Option<String>,
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    /// Exclusive end of this node's subtree in preorder.
    end: usize,
}

/// A non-XML `annotation` element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub encoding: String,
    pub payload: String,
    pub node: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentifierKind {
    Mi,
    Ci,
}

impl IdentifierKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentifierKind::Mi => "mi",
            IdentifierKind::Ci => "ci",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identifier {
    pub kind: IdentifierKind,
    pub text: String,
    pub node: NodeId,
}

/// Features [`MathDoc::clean`] can strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CleanFeature {
    /// Every `id` and `xref` attribute.
    CrossReferences,
    ContentBranch,
    PresentationBranch,
    /// Non-XML `annotation` elements.
    Annotations,
}

impl std::str::FromStr for CleanFeature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cross_references" | "cross-references" => Ok(CleanFeature::CrossReferences),
            "content_branch" | "content-branch" => Ok(CleanFeature::ContentBranch),
            "presentation_branch" | "presentation-branch" => Ok(CleanFeature::PresentationBranch),
            "annotations" => Ok(CleanFeature::Annotations),
            _ => Err(format!("unknown clean feature `{s}`")),
        }
    }
}

/// A validated, immutable MathML document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MathDoc {
    nodes: Vec<Slot>,
    presentation_root: Option<NodeId>,
    content_root: Option<NodeId>,
    annotations: Vec<Annotation>,
    ids: BTreeMap<String, NodeId>,
    /// Every `xref` attribute, in document order.
    links: Vec<(NodeId, String)>,
}

/// Borrowed view of one node.
#[derive(Debug, Clone, Copy)]
pub struct NodeRef<'a> {
    doc: &'a MathDoc,
    id: NodeId,
}

impl<'a> NodeRef<'a> {
    fn slot(&self) -> &'a Slot {
        &self.doc.nodes[self.id.0]
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn name(&self) -> &'a str {
        &self.slot().name
    }

    pub fn attributes(&self) -> &'a [(String, String)] {
        &self.slot().attributes
    }

    pub fn attr(&self, key: &str) -> Option<&'a str> {
        self.slot()
            .attributes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn text(&self) -> Option<&'a str> {
        self.slot().text.as_deref()
    }

    pub fn child_ids(&self) -> &'a [NodeId] {
        &self.slot().children
    }

    pub fn children(&self) -> impl Iterator<Item = NodeRef<'a>> + 'a {
        let doc = self.doc;
        self.slot().children.iter().map(move |&id| NodeRef { doc, id })
    }

    pub fn parent(&self) -> Option<NodeRef<'a>> {
        self.slot().parent.map(|id| NodeRef { doc: self.doc, id })
    }

    pub fn is_leaf(&self) -> bool {
        self.slot().children.is_empty()
    }
}

fn flatten(node: MathNode, parent: Option<NodeId>, out: &mut Vec<Slot>) -> NodeId {
    let id = NodeId(out.len());
    out.push(Slot {
        name: node.name,
        attributes: node.attributes,
        text: node.text,
        parent,
        children: Vec::with_capacity(node.children.len()),
        end: 0,
    });
    for child in node.children {
        let child_id = flatten(child, Some(id), out);
        out[id.0].children.push(child_id);
    }
    out[id.0].end = out.len();
    id
}

fn validate(slot: &Slot) -> Result<(), Error> {
    if slot.name.is_empty() || slot.name.contains(char::is_whitespace) {
        return Err(Error::InvalidNode(format!("bad element name {:?}", slot.name)));
    }
    let mut keys = HashSet::new();
    for (k, _) in &slot.attributes {
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(Error::InvalidNode(format!("bad attribute name {k:?} on <{}>", slot.name)));
        }
        if !keys.insert(k.as_str()) {
            return Err(Error::InvalidNode(format!("duplicate attribute `{k}` on <{}>", slot.name)));
        }
    }
    Ok(())
}

fn is_annotation(name: &str) -> bool {
    name == "annotation" || name == "annotation-xml"
}

impl MathDoc {
    /// Parses one math element. See the [`parse`](super::parse) module docs
    /// for what lenient mode repairs.
    pub fn parse(input: &str, mode: ParseMode) -> Result<(MathDoc, ParseReport), Error> {
        let (tree, repairs) = parse_tree(input, mode)?;
        let doc = MathDoc::from_tree(tree)?;
        let report = ParseReport {
            repairs,
            dangling_xrefs: doc.dangling_xrefs(),
        };
        Ok((doc, report))
    }

    /// Validates an owned tree and indexes it.
    pub fn from_tree(root: MathNode) -> Result<MathDoc, Error> {
        if root.name != "math" {
            return Err(Error::InvalidNode(format!(
                "root element must be <math>, found <{}>",
                root.name
            )));
        }
        let mut nodes = Vec::new();
        flatten(root, None, &mut nodes);

        let mut ids = BTreeMap::new();
        let mut links = Vec::new();
        let mut annotations = Vec::new();
        for (i, slot) in nodes.iter().enumerate() {
            validate(slot)?;
            for (k, v) in &slot.attributes {
                match k.as_str() {
                    "id" => {
                        if ids.insert(v.clone(), NodeId(i)).is_some() {
                            return Err(Error::DuplicateId(v.clone()));
                        }
                    }
                    "xref" => links.push((NodeId(i), v.clone())),
                    _ => {}
                }
            }
            if slot.name == "annotation" {
                let encoding = slot
                    .attributes
                    .iter()
                    .find(|(k, _)| k == "encoding")
                    .map_or(String::new(), |(_, v)| v.clone());
                annotations.push(Annotation {
                    encoding,
                    payload: slot.text.clone().unwrap_or_default(),
                    node: NodeId(i),
                });
            }
        }

        let mut doc = MathDoc {
            nodes,
            presentation_root: None,
            content_root: None,
            annotations,
            ids,
            links,
        };
        let (p, c) = doc.locate_branches();
        doc.presentation_root = p;
        doc.content_root = c;
        Ok(doc)
    }

    fn locate_branches(&self) -> (Option<NodeId>, Option<NodeId>) {
        let root = self.node(self.root());
        let top: Vec<_> = root.children().collect();
        let semantics = match top.as_slice() {
            [only] if only.name() == "semantics" => *only,
            _ => {
                let content = !top.is_empty() && top.iter().all(|n| is_content_element(n.name()));
                return if content {
                    (None, Some(root.id))
                } else {
                    (Some(root.id), None)
                };
            }
        };
        let primary = semantics.children().find(|n| !is_annotation(n.name()));
        let annotation_xml = |encoding: &str| {
            semantics
                .children()
                .find(|n| n.name() == "annotation-xml" && n.attr("encoding") == Some(encoding))
                .and_then(|n| n.child_ids().first().copied())
        };
        match primary {
            Some(p) if is_content_element(p.name()) => {
                (annotation_xml(PRESENTATION_ENCODING), Some(p.id))
            }
            Some(p) => (Some(p.id), annotation_xml(CONTENT_ENCODING)),
            None => (
                annotation_xml(PRESENTATION_ENCODING),
                annotation_xml(CONTENT_ENCODING),
            ),
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    /// # Panics
    /// If `id` does not belong to this document.
    pub fn node(&self, id: NodeId) -> NodeRef<'_> {
        assert!(id.0 < self.nodes.len(), "node {id} out of range");
        NodeRef { doc: self, id }
    }

    pub fn get(&self, id: NodeId) -> Option<NodeRef<'_>> {
        (id.0 < self.nodes.len()).then_some(NodeRef { doc: self, id })
    }

    /// All nodes in preorder.
    pub fn nodes(&self) -> impl Iterator<Item = NodeRef<'_>> {
        (0..self.nodes.len()).map(move |i| NodeRef { doc: self, id: NodeId(i) })
    }

    /// Preorder ids of `id` and all its descendants.
    pub fn subtree_range(&self, id: NodeId) -> Range<usize> {
        id.0..self.nodes[id.0].end
    }

    pub fn is_ancestor(&self, ancestor: NodeId, node: NodeId) -> bool {
        ancestor != node && self.subtree_range(ancestor).contains(&node.0)
    }

    pub fn presentation_root(&self) -> Option<NodeId> {
        self.presentation_root
    }

    pub fn content_root(&self) -> Option<NodeId> {
        self.content_root
    }

    pub fn branch_root(&self, branch: Branch) -> Option<NodeId> {
        match branch {
            Branch::Presentation => self.presentation_root,
            Branch::Content => self.content_root,
        }
    }

    /// Top-level nodes of a branch. A branch rooted at `math` itself (no
    /// `semantics` wrapper) is the math element's child list; a branch inside
    /// `annotation-xml` is that element's child list.
    pub fn branch_members(&self, branch: Branch) -> Option<Vec<NodeId>> {
        let head = self.branch_root(branch)?;
        if head == self.root() {
            return Some(self.node(head).child_ids().to_vec());
        }
        let parent = self.node(head).parent()?;
        if parent.name() == "annotation-xml" {
            Some(parent.child_ids().to_vec())
        } else {
            Some(vec![head])
        }
    }

    /// Every node in `scope`, in preorder. Branch scopes exclude their
    /// wrapper elements.
    pub fn scope_nodes(&self, scope: Scope) -> Result<Vec<NodeId>, Error> {
        let branch = match scope {
            Scope::Whole => return Ok((0..self.nodes.len()).map(NodeId).collect()),
            Scope::Presentation => Branch::Presentation,
            Scope::Content => Branch::Content,
        };
        let members = self
            .branch_members(branch)
            .ok_or(Error::MissingBranch(scope))?;
        Ok(members
            .into_iter()
            .flat_map(|m| self.subtree_range(m))
            .map(NodeId)
            .collect())
    }

    pub fn annotations(&self) -> &[Annotation] {
        &self.annotations
    }

    /// Payload of the first `application/x-tex` annotation.
    pub fn get_tex(&self) -> Option<&str> {
        self.annotations
            .iter()
            .find(|a| a.encoding == TEX_ENCODING)
            .map(|a| a.payload.as_str())
    }

    pub fn element_by_id(&self, id: &str) -> Option<NodeId> {
        self.ids.get(id).copied()
    }

    pub fn ids(&self) -> &BTreeMap<String, NodeId> {
        &self.ids
    }

    /// Every `(node, xref value)`, in document order.
    pub fn xref_links(&self) -> &[(NodeId, String)] {
        &self.links
    }

    /// Node pairs whose xrefs point at each other, lower id first.
    pub fn xref_pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.links
            .iter()
            .filter_map(|(from, target)| {
                let to = *self.ids.get(target)?;
                let back = self.node(to).attr("xref")?;
                let from_id = self.node(*from).attr("id")?;
                (back == from_id && *from < to).then_some((*from, to))
            })
            .collect()
    }

    pub fn dangling_xrefs(&self) -> Vec<(NodeId, String)> {
        self.links
            .iter()
            .filter(|(_, target)| !self.ids.contains_key(target))
            .cloned()
            .collect()
    }

    /// Follows a cross-reference from the node with `id`: its own `xref`
    /// target if that resolves, otherwise the first node whose `xref` names
    /// `id`.
    pub fn resolve_xref(&self, id: &str) -> Option<NodeId> {
        let node = self.node(*self.ids.get(id)?);
        if let Some(target) = node.attr("xref").and_then(|x| self.ids.get(x)) {
            return Some(*target);
        }
        self.links
            .iter()
            .find(|(_, target)| target == id)
            .map(|(from, _)| *from)
    }

    /// Owned copy of a subtree.
    pub fn subtree(&self, id: NodeId) -> MathNode {
        self.build(id, &|_| false, false)
    }

    pub fn to_tree(&self) -> MathNode {
        self.subtree(self.root())
    }

    fn build(&self, id: NodeId, skip: &dyn Fn(NodeId) -> bool, strip_xrefs: bool) -> MathNode {
        let slot = &self.nodes[id.0];
        MathNode {
            name: slot.name.clone(),
            attributes: slot
                .attributes
                .iter()
                .filter(|(k, _)| !(strip_xrefs && (k == "id" || k == "xref")))
                .cloned()
                .collect(),
            text: slot.text.clone(),
            children: slot
                .children
                .iter()
                .filter(|&&c| !skip(c))
                .map(|&c| self.build(c, skip, strip_xrefs))
                .collect(),
        }
    }

    /// Standalone document holding only one branch. Cross-references are kept
    /// verbatim and may dangle.
    pub fn split(&self, branch: Branch) -> Result<MathDoc, Error> {
        let members = self
            .branch_members(branch)
            .ok_or(Error::MissingBranch(branch.into()))?;
        let root = self.node(self.root());
        let tree = MathNode {
            name: "math".to_owned(),
            attributes: root.attributes().to_vec(),
            text: None,
            children: members.into_iter().map(|m| self.subtree(m)).collect(),
        };
        MathDoc::from_tree(tree)
    }

    pub fn split_presentation(&self) -> Result<MathDoc, Error> {
        self.split(Branch::Presentation)
    }

    pub fn split_content(&self) -> Result<MathDoc, Error> {
        self.split(Branch::Content)
    }

    /// `mi`/`ci` elements in document order. `Scope::Whole` walks the entire
    /// document and fails only if the document has neither branch.
    pub fn extract_identifiers(&self, scope: Scope) -> Result<Vec<Identifier>, Error> {
        if scope == Scope::Whole && self.presentation_root.is_none() && self.content_root.is_none() {
            return Err(Error::MissingBranch(Scope::Whole));
        }
        Ok(self
            .scope_nodes(scope)?
            .into_iter()
            .filter_map(|id| {
                let node = self.node(id);
                let kind = match node.name() {
                    "mi" => IdentifierKind::Mi,
                    "ci" => IdentifierKind::Ci,
                    _ => return None,
                };
                Some(Identifier {
                    kind,
                    text: node.text().unwrap_or_default().to_owned(),
                    node: id,
                })
            })
            .collect())
    }

    /// Removes the requested features. When a single branch is left with no
    /// annotations, the `semantics` wrapper is unwrapped.
    pub fn clean<I>(&self, features: I) -> Result<MathDoc, Error>
    where
        I: IntoIterator<Item = CleanFeature>,
    {
        let features: BTreeSet<_> = features.into_iter().collect();
        if features.is_empty() {
            return Err(Error::NoFeatures);
        }
        let had_branch = self.presentation_root.is_some() || self.content_root.is_some();

        let mut removed = HashSet::new();
        for (feature, branch) in [
            (CleanFeature::ContentBranch, Branch::Content),
            (CleanFeature::PresentationBranch, Branch::Presentation),
        ] {
            if !features.contains(&feature) {
                continue;
            }
            let Some(head) = self.branch_root(branch) else { continue };
            if head == self.root() {
                return Err(Error::WouldBeEmpty);
            }
            let parent = self.node(head).parent().expect("non-root node has a parent");
            removed.insert(if parent.name() == "annotation-xml" { parent.id } else { head });
        }
        if features.contains(&CleanFeature::Annotations) {
            removed.extend(self.annotations.iter().map(|a| a.node));
        }

        let strip = features.contains(&CleanFeature::CrossReferences);
        let mut tree = self.build(self.root(), &|id| removed.contains(&id), strip);
        unwrap_single_branch(&mut tree);
        let doc = MathDoc::from_tree(tree)?;
        if had_branch && doc.presentation_root.is_none() && doc.content_root.is_none() {
            return Err(Error::WouldBeEmpty);
        }
        Ok(doc)
    }
}

fn unwrap_single_branch(root: &mut MathNode) {
    let [semantics] = root.children.as_mut_slice() else { return };
    if semantics.name != "semantics" || semantics.children.len() != 1 {
        return;
    }
    let only = semantics.children.pop().expect("one child");
    root.children = match only.name.as_str() {
        "annotation" => {
            semantics.children.push(only);
            return;
        }
        "annotation-xml" => match only.attr("encoding") {
            Some(CONTENT_ENCODING | PRESENTATION_ENCODING) => only.children,
            _ => {
                semantics.children.push(only);
                return;
            }
        },
        _ => vec![only],
    };
}
