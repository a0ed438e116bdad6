use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;
use sha2::{Digest, Sha256};

use scrollex::{CliqueComplex, Error, ExtensionSpec, Graph, RawMatrix, Vertex};

/// The JSON problem format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub extensions: Vec<RawMatrix>,
}

/// A problem with the input, located by a JSON pointer.
#[derive(Debug, thiserror::Error)]
#[error("{pointer}: {message}")]
pub struct InputError {
    pub pointer: String,
    pub message: String,
}

impl InputError {
    fn at(pointer: impl Into<String>, message: impl ToString) -> Self {
        InputError { pointer: pointer.into(), message: message.to_string() }
    }
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

pub fn parse_instance(document: &str) -> Result<ProblemInstance, InputError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut pointer = String::new();
        for seg in e.path().iter() {
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } | Segment::Enum { variant: key } => {
                    pointer.push('/');
                    pointer.push_str(&escape(key));
                }
                Segment::Unknown => pointer.push_str("/?"),
            }
        }
        InputError::at(pointer, e.into_inner())
    })
}

fn locate(err: Error) -> InputError {
    let pointer = match &err {
        Error::EmptyVertexName { index } | Error::DuplicateVertex { index, .. } => format!("/vertices/{index}"),
        Error::LoopEdge { index, .. } | Error::UnknownEndpoint { index, .. } => format!("/edges/{index}"),
        Error::FacetMismatch { index: Some(i), .. } => format!("/facets/{i}"),
        Error::FacetMismatch { index: None, .. } => "/facets".to_string(),
        Error::Extension { site, .. } => {
            let mut p = format!("/extensions/{}", site.matrix);
            if let Some(j) = site.block {
                p.push_str(&format!("/blocks/{j}"));
            }
            if let Some(f) = site.field {
                p.push_str(&format!("/{f}"));
            }
            if let Some(k) = site.item {
                p.push_str(&format!("/{k}"));
            }
            p
        }
        _ => String::new(),
    };
    InputError::at(pointer, err)
}

impl ProblemInstance {
    pub fn graph(&self) -> Result<Graph, InputError> {
        Graph::build(&self.vertices, &self.edges).map_err(locate)
    }

    pub fn complex(&self) -> Result<CliqueComplex, InputError> {
        let g = self.graph()?;
        let Some(facets) = &self.facets else {
            return Ok(CliqueComplex::new(g));
        };
        let mut resolved = Vec::with_capacity(facets.len());
        for (i, f) in facets.iter().enumerate() {
            let mut vs: Vec<Vertex> = Vec::with_capacity(f.len());
            for (k, name) in f.iter().enumerate() {
                let v = g
                    .vertex(name)
                    .ok_or_else(|| InputError::at(format!("/facets/{i}/{k}"), format!("unknown vertex `{name}`")))?;
                vs.push(v);
            }
            resolved.push(vs);
        }
        CliqueComplex::with_facets(g, resolved).map_err(locate)
    }

    pub fn extension(&self) -> Result<ExtensionSpec, InputError> {
        scrollex::validate_extension(&self.complex()?, &self.extensions).map_err(locate)
    }

    /// Sorted-key compact JSON of the instance.
    pub fn canonical(&self) -> String {
        serde_json::to_value(self).expect("instances serialize").to_string()
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}
