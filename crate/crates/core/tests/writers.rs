use ellgrid::geometry::{initial_mesh, BoundarySpec};
use ellgrid::io::{quad_cells, write_gmv, write_matlab, write_svg, GmvCompat, QuadCell, SvgStyle};
use ellgrid::{MeshError, Point2, StructuredGrid};

fn text(f: impl FnOnce(&mut Vec<u8>)) -> String {
    let mut buf = Vec::new();
    f(&mut buf);
    String::from_utf8(buf).unwrap()
}

#[test]
fn gmv_modes_differ_only_by_z_block() {
    let g = StructuredGrid::new_uniform(4, 3).unwrap();
    let valid = text(|b| write_gmv(&g, b, GmvCompat::ValidGmv).unwrap());
    let paper = text(|b| write_gmv(&g, b, GmvCompat::PaperExact).unwrap());
    let z = format!("{}\n\n", "0        ".repeat(12));
    assert_eq!(valid.replacen(&z, "", 1), paper);
    assert!(valid.starts_with("gmvinput ascii\nnodes  12\n"));
    assert!(valid.ends_with("\n\nendgmv\n"));
    assert_eq!(valid.matches("quad  4  \n").count(), 6);
    assert!(valid.contains("cells  6\nquad  4  \n1   2   6  5\n"));
}

#[test]
fn cells_share_edges_with_neighbours() {
    let (nx, ny) = (5, 4);
    let cells = quad_cells(nx, ny);
    assert_eq!(cells.len(), (nx - 1) * (ny - 1));
    for j in 0..ny - 1 {
        for i in 0..nx - 2 {
            let QuadCell(a) = cells[i + j * (nx - 1)];
            let QuadCell(b) = cells[i + 1 + j * (nx - 1)];
            assert_eq!((a[1], a[2]), (b[0], b[3]));
        }
    }
}

#[test]
fn cells_are_counterclockwise_on_circle_mesh() {
    let mesh = initial_mesh(9, 7, &BoundarySpec::circle(1.0).unwrap()).unwrap();
    let p = |n: usize| Point2::new(mesh.xs()[n - 1], mesh.ys()[n - 1]);
    for QuadCell(c) in quad_cells(9, 7) {
        let area: f64 = (0..4)
            .map(|k| {
                let (a, b) = (p(c[k]), p(c[(k + 1) % 4]));
                a.x * b.y - b.x * a.y
            })
            .sum();
        assert!(area > 0.0, "cell {c:?} has signed area {area}");
    }
}

#[test]
fn matlab_assigns_every_node_once() {
    let g = StructuredGrid::new_uniform(5, 4).unwrap();
    let s = text(|b| write_matlab(&g, b).unwrap());
    assert_eq!(s.matches("x1(").count() - s.matches("plot(x1(").count(), 20);
    assert!(s.contains("x1(5,4)=1;   y1(5,4)=1;\n"));
    assert!(s.contains("m =  5\nn =  4\n"));
    assert!(s.ends_with("axis off;\n"));
}

#[test]
fn svg_has_one_polyline_per_grid_line_and_covers_the_mesh() {
    let mesh = initial_mesh(6, 5, &BoundarySpec::circle(2.0).unwrap()).unwrap();
    let s = text(|b| write_svg(&mesh, b, &SvgStyle::default()).unwrap());
    assert_eq!(s.matches("<polyline").count(), 6 + 5);
    assert_eq!(s.matches("class=\"boundary\"").count(), 4);
    let vb = s.split("viewBox=\"").nth(1).unwrap().split('"').next().unwrap();
    let v: Vec<f64> = vb.split(' ').map(|t| t.parse().unwrap()).collect();
    for (&x, &y) in mesh.xs().iter().zip(mesh.ys()) {
        assert!(x > v[0] && x < v[0] + v[2]);
        assert!(-y > v[1] && -y < v[1] + v[3]);
    }
}

#[test]
fn svg_rejects_collapsed_grid() {
    let g = StructuredGrid::from_fn(3, 3, |_, _| Point2::new(1.0, 1.0)).unwrap();
    let err = write_svg(&g, Vec::new(), &SvgStyle::default()).unwrap_err();
    assert!(matches!(err, MeshError::Render(_)));
}
