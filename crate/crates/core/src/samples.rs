//! Reference documents shared by tests, the CLI stubs and the demo page.

/// Parallel markup for `\frac{a}{b}` with presentation/content cross-references.
pub const PARALLEL_FRAC: &str = r#"<math xmlns="http://www.w3.org/1998/Math/MathML"><semantics>
  <mfrac id="p.2" xref="c.1">
  <mi id="p.1" xref="c.2">a</mi>
  <mi id="p.3" xref="c.3">b</mi></mfrac>
<annotation-xml encoding="MathML-Content"><apply>
  <divide id="c.1" xref="p.2"/>
  <ci id="c.2" xref="p.1">a</ci>
  <ci id="c.3" xref="p.3">b</ci></apply></annotation-xml>
<annotation encoding="application/x-tex">\frac{a}{b}</annotation>
</semantics></math>
"#;

/// Presentation-only `x + x`.
pub const X_PLUS_X: &str = r#"<math xmlns="http://www.w3.org/1998/Math/MathML"><mrow><mi>x</mi><mo>+</mo><mi>x</mi></mrow></math>"#;
