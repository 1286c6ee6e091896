pub mod bitangent;
pub mod catalog;
pub mod equivariant;
pub mod grp;
pub mod polynum;
pub mod projgeom;
