#include "localize/models.hpp"

#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>

#include "localize/error.hpp"

namespace localize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleMargin = 1e-12;
constexpr double kCapHalfWidth = 0.7;

Matrix antisym2(double w) {
    Matrix m(2, 2);
    m << 0.0, w, -w, 0.0;
    return m;
}

Vector cross(const Vector& a, const Vector& b) {
    Vector c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
    return c;
}

// Unit-sphere embedding in polar coordinates (theta, phi).
Embedding polar_embedding() {
    Embedding e;
    e.value = [](const Point& x) {
        Vector n(3);
        n << std::sin(x[0]) * std::cos(x[1]), std::sin(x[0]) * std::sin(x[1]), std::cos(x[0]);
        return n;
    };
    e.jacobian = [](const Point& x) {
        const double st = std::sin(x[0]), ct = std::cos(x[0]), sp = std::sin(x[1]), cp = std::cos(x[1]);
        Matrix j(3, 2);
        j << ct * cp, -st * sp,
             ct * sp, st * cp,
             -st, 0.0;
        return j;
    };
    e.hessians = [](const Point& x) {
        const double st = std::sin(x[0]), ct = std::cos(x[0]), sp = std::sin(x[1]), cp = std::cos(x[1]);
        std::vector<Matrix> h(3, Matrix(2, 2));
        h[0] << -st * cp, -ct * sp, -ct * sp, -st * cp;
        h[1] << -st * sp, ct * cp, ct * cp, -st * sp;
        h[2] << -ct, 0.0, 0.0, 0.0;
        return h;
    };
    return e;
}

// Unit-sphere embedding over the disk: n = (u, v, side * sqrt(1 - u^2 - v^2)).
Embedding cap_embedding(double side) {
    Embedding e;
    e.value = [side](const Point& x) {
        Vector n(3);
        n << x[0], x[1], side * std::sqrt(1.0 - x[0] * x[0] - x[1] * x[1]);
        return n;
    };
    e.jacobian = [side](const Point& x) {
        const double w = std::sqrt(1.0 - x[0] * x[0] - x[1] * x[1]);
        Matrix j(3, 2);
        j << 1.0, 0.0,
             0.0, 1.0,
             -side * x[0] / w, -side * x[1] / w;
        return j;
    };
    e.hessians = [side](const Point& x) {
        const double u = x[0], v = x[1];
        const double w = std::sqrt(1.0 - u * u - v * v);
        const double w3 = w * w * w;
        std::vector<Matrix> h(3, Matrix::Zero(2, 2));
        h[2] << side * (-1.0 / w - u * u / w3), side * (-u * v / w3),
                side * (-u * v / w3), side * (-1.0 / w - v * v / w3);
        return h;
    };
    return e;
}

// Levi-Civita connection of the induced metric r^2 <dn, dn>.
ChristoffelField embedded_christoffel(Embedding e, double scale2) {
    return [e = std::move(e), scale2](const Point& x) {
        const Matrix j = e.jacobian(x);
        const std::vector<Matrix> h = e.hessians(x);
        const Matrix g = scale2 * j.transpose() * j;
        const Matrix ginv = g.inverse();
        const auto d = static_cast<std::size_t>(j.cols());
        Tensor3 gamma(d);
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t k = 0; k < d; ++k) {
                Vector first(static_cast<Eigen::Index>(d));
                for (std::size_t l = 0; l < d; ++l) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < h.size(); ++i) {
                        acc += j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) *
                               h[i](static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
                    }
                    first[static_cast<Eigen::Index>(l)] = scale2 * acc;
                }
                const Vector second = ginv * first;
                for (std::size_t m = 0; m < d; ++m) gamma(m, n, k) = second[static_cast<Eigen::Index>(m)];
            }
        return gamma;
    };
}

ChartGeometry sphere_polar(double r) {
    const double r2 = r * r;
    ChartGeometry cg;
    cg.chart.id = "polar";
    cg.chart.lower = {0.0, 0.0};
    cg.chart.upper = {kPi, 2.0 * kPi};
    cg.chart.periodic = {false, true};
    cg.chart.excised_sets = {"north pole theta=0", "south pole theta=pi"};
    cg.chart.covers_almost_everywhere = true;
    cg.chart.in_excised_set = [](const Point& x) { return std::abs(std::sin(x[0])) < kPoleMargin; };
    cg.embedding = polar_embedding();
    cg.metric = [r2](const Point& x) {
        const double s = std::sin(x[0]);
        Matrix g = Matrix::Zero(2, 2);
        g(0, 0) = r2;
        g(1, 1) = r2 * s * s;
        return g;
    };
    cg.symplectic = [r2](const Point& x) { return antisym2(r2 * std::sin(x[0])); };
    cg.christoffel = [](const Point& x) {
        const double s = std::sin(x[0]), c = std::cos(x[0]);
        Tensor3 gamma(2);
        gamma(0, 1, 1) = -s * c;
        gamma(1, 0, 1) = c / s;
        gamma(1, 1, 0) = c / s;
        return gamma;
    };
    cg.riemann = [](const Point& x) {
        const double s = std::sin(x[0]);
        Tensor4 rm(2);
        rm(0, 1, 0, 1) = s * s;
        rm(0, 1, 1, 0) = -s * s;
        rm(1, 0, 1, 0) = 1.0;
        rm(1, 0, 0, 1) = -1.0;
        return rm;
    };
    return cg;
}

ChartGeometry sphere_cap(double r, double side) {
    const double r2 = r * r;
    ChartGeometry cg;
    cg.chart.id = side > 0 ? "north" : "south";
    cg.chart.lower = {-kCapHalfWidth, -kCapHalfWidth};
    cg.chart.upper = {kCapHalfWidth, kCapHalfWidth};
    cg.chart.periodic = {false, false};
    cg.chart.covers_almost_everywhere = false;
    cg.embedding = cap_embedding(side);
    cg.metric = [e = cg.embedding, r2](const Point& x) {
        const Matrix j = e.jacobian(x);
        return Matrix(r2 * j.transpose() * j);
    };
    cg.symplectic = [e = cg.embedding, r2](const Point& x) {
        const Vector n = e.value(x);
        const Matrix j = e.jacobian(x);
        return antisym2(r2 * n.dot(cross(j.col(0), j.col(1))));
    };
    cg.christoffel = embedded_christoffel(cg.embedding, r2);
    return cg;
}

Embedding torus_embedding() {
    Embedding e;
    e.value = [](const Point& x) {
        Vector y(4);
        y << std::cos(x[0]), std::sin(x[0]), std::cos(x[1]), std::sin(x[1]);
        return y;
    };
    e.jacobian = [](const Point& x) {
        Matrix j = Matrix::Zero(4, 2);
        j(0, 0) = -std::sin(x[0]);
        j(1, 0) = std::cos(x[0]);
        j(2, 1) = -std::sin(x[1]);
        j(3, 1) = std::cos(x[1]);
        return j;
    };
    e.hessians = [](const Point& x) {
        std::vector<Matrix> h(4, Matrix::Zero(2, 2));
        h[0](0, 0) = -std::cos(x[0]);
        h[1](0, 0) = -std::sin(x[0]);
        h[2](1, 1) = -std::cos(x[1]);
        h[3](1, 1) = -std::sin(x[1]);
        return h;
    };
    return e;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

std::string format_radius(double r) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r);
    return std::string(buf, ptr);
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

AmbientFunction linear_function(Vector coeffs) {
    AmbientFunction f;
    f.value = [coeffs](const Vector& y) { return coeffs.dot(y); };
    f.gradient = [coeffs](const Vector&) { return coeffs; };
    const auto n = coeffs.size();
    f.hessian = [n](const Vector&) { return Matrix(Matrix::Zero(n, n)); };
    return f;
}

AmbientFunction constant_function(Eigen::Index n, double c) {
    AmbientFunction f;
    f.value = [c](const Vector&) { return c; };
    f.gradient = [n](const Vector&) { return Vector(Vector::Zero(n)); };
    f.hessian = [n](const Vector&) { return Matrix(Matrix::Zero(n, n)); };
    return f;
}

// z + 0.3 * x * sqrt(x^2 + y^2) on the unit sphere, i.e. cos(theta) + 0.3 sin^2(theta) cos(phi).
AmbientFunction tilted_height() {
    constexpr double k = 0.3;
    AmbientFunction f;
    f.value = [](const Vector& y) { return y[2] + k * y[0] * std::hypot(y[0], y[1]); };
    f.gradient = [](const Vector& y) {
        const double rho = std::hypot(y[0], y[1]);
        Vector g = Vector::Zero(3);
        g[2] = 1.0;
        if (rho > 0.0) {
            g[0] = k * (rho + y[0] * y[0] / rho);
            g[1] = k * y[0] * y[1] / rho;
        }
        return g;
    };
    f.hessian = [](const Vector& y) {
        const double rho = std::hypot(y[0], y[1]);
        Matrix h = Matrix::Zero(3, 3);
        // Bounded but direction-dependent at rho = 0; its angular average (zero) is used there.
        if (rho > 0.0) {
            const double x = y[0], v = y[1], r3 = rho * rho * rho;
            h(0, 0) = k * (3.0 * x / rho - x * x * x / r3);
            h(0, 1) = k * (v / rho - x * x * v / r3);
            h(1, 0) = h(0, 1);
            h(1, 1) = k * (x / rho - x * v * v / r3);
        }
        return h;
    };
    return f;
}

// "lin:<a>,<b>" -> (a, b)
bool parse_lin(std::string_view name, double& a, double& b) {
    if (name.substr(0, 4) != "lin:") return false;
    const std::string_view rest = name.substr(4);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) return false;
    return parse_double(rest.substr(0, comma), a) && parse_double(rest.substr(comma + 1), b);
}

}  // namespace

ManifoldModel make_sphere(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive");
    ManifoldModel m;
    m.name = radius == 1.0 ? "s2" : "s2:r=" + format_radius(radius);
    m.dim = 2;
    m.ambient_dim = 3;
    m.charts.push_back(sphere_polar(radius));
    m.charts.push_back(sphere_cap(radius, 1.0));
    m.charts.push_back(sphere_cap(radius, -1.0));
    return m;
}

ManifoldModel make_flat_torus() {
    ManifoldModel m;
    m.name = "t2";
    m.dim = 2;
    m.ambient_dim = 4;
    ChartGeometry cg;
    cg.chart.id = "angles";
    cg.chart.lower = {0.0, 0.0};
    cg.chart.upper = {2.0 * kPi, 2.0 * kPi};
    cg.chart.periodic = {true, true};
    cg.chart.covers_almost_everywhere = true;
    cg.embedding = torus_embedding();
    cg.metric = [](const Point&) { return Matrix(Matrix::Identity(2, 2)); };
    cg.symplectic = [](const Point&) { return antisym2(1.0); };
    cg.christoffel = [](const Point&) { return Tensor3(2); };
    cg.riemann = [](const Point&) { return Tensor4(2); };
    m.charts.push_back(std::move(cg));
    return m;
}

ManifoldModel make_product(const ManifoldModel& a, const ManifoldModel& b) {
    auto fa = std::make_shared<const ManifoldModel>(a);
    auto fb = std::make_shared<const ManifoldModel>(b);
    const auto da = static_cast<Eigen::Index>(a.dim);
    const auto db = static_cast<Eigen::Index>(b.dim);
    const bool symplectic = a.has_symplectic() && b.has_symplectic();

    ManifoldModel m;
    m.name = a.name + "x" + b.name;
    m.dim = a.dim + b.dim;
    m.ambient_dim = a.ambient_dim + b.ambient_dim;

    for (std::size_t i = 0; i < a.charts.size(); ++i) {
        for (std::size_t j = 0; j < b.charts.size(); ++j) {
            const ChartGeometry& ca = a.charts[i];
            const ChartGeometry& cb = b.charts[j];
            ChartGeometry cg;
            cg.chart.id = ca.chart.id + "*" + cb.chart.id;
            cg.chart.lower = ca.chart.lower;
            cg.chart.lower.insert(cg.chart.lower.end(), cb.chart.lower.begin(), cb.chart.lower.end());
            cg.chart.upper = ca.chart.upper;
            cg.chart.upper.insert(cg.chart.upper.end(), cb.chart.upper.begin(), cb.chart.upper.end());
            cg.chart.periodic = ca.chart.periodic;
            cg.chart.periodic.insert(cg.chart.periodic.end(), cb.chart.periodic.begin(), cb.chart.periodic.end());
            for (const auto& s : ca.chart.excised_sets) cg.chart.excised_sets.push_back("first factor: " + s);
            for (const auto& s : cb.chart.excised_sets) cg.chart.excised_sets.push_back("second factor: " + s);
            cg.chart.covers_almost_everywhere = ca.chart.covers_almost_everywhere && cb.chart.covers_almost_everywhere;

            auto head = [da](const Point& x) { return Point(x.head(da)); };
            auto tail = [db](const Point& x) { return Point(x.tail(db)); };
            cg.chart.in_excised_set = [ea = ca.chart.in_excised_set, eb = cb.chart.in_excised_set, head, tail](const Point& x) {
                return (ea && ea(head(x))) || (eb && eb(tail(x)));
            };

            cg.embedding.value = [e1 = ca.embedding, e2 = cb.embedding, head, tail](const Point& x) {
                Vector y1 = e1.value(head(x));
                Vector y2 = e2.value(tail(x));
                Vector y(y1.size() + y2.size());
                y << y1, y2;
                return y;
            };
            cg.embedding.jacobian = [e1 = ca.embedding, e2 = cb.embedding, head, tail](const Point& x) {
                return block_diag(e1.jacobian(head(x)), e2.jacobian(tail(x)));
            };
            cg.embedding.hessians = [e1 = ca.embedding, e2 = cb.embedding, head, tail, da, db](const Point& x) {
                std::vector<Matrix> out;
                for (const Matrix& h : e1.hessians(head(x))) out.push_back(block_diag(h, Matrix::Zero(db, db)));
                for (const Matrix& h : e2.hessians(tail(x))) out.push_back(block_diag(Matrix::Zero(da, da), h));
                return out;
            };
            cg.metric = [g1 = ca.metric, g2 = cb.metric, head, tail](const Point& x) {
                return block_diag(g1(head(x)), g2(tail(x)));
            };
            if (symplectic) {
                cg.symplectic = [w1 = ca.symplectic, w2 = cb.symplectic, head, tail](const Point& x) {
                    return block_diag(w1(head(x)), w2(tail(x)));
                };
            }
            cg.christoffel = [fa, fb, i, j, head, tail, da, db](const Point& x) {
                const Tensor3 g1 = christoffel_at(*fa, i, head(x));
                const Tensor3 g2 = christoffel_at(*fb, j, tail(x));
                const auto d1 = static_cast<std::size_t>(da), d2 = static_cast<std::size_t>(db);
                Tensor3 g(d1 + d2);
                for (std::size_t p = 0; p < d1; ++p)
                    for (std::size_t q = 0; q < d1; ++q)
                        for (std::size_t r = 0; r < d1; ++r) g(p, q, r) = g1(p, q, r);
                for (std::size_t p = 0; p < d2; ++p)
                    for (std::size_t q = 0; q < d2; ++q)
                        for (std::size_t r = 0; r < d2; ++r) g(d1 + p, d1 + q, d1 + r) = g2(p, q, r);
                return g;
            };
            cg.riemann = [fa, fb, i, j, head, tail, da, db](const Point& x) {
                const Tensor4 r1 = riemann_at(*fa, i, head(x));
                const Tensor4 r2 = riemann_at(*fb, j, tail(x));
                const auto d1 = static_cast<std::size_t>(da), d2 = static_cast<std::size_t>(db);
                Tensor4 r(d1 + d2);
                for (std::size_t p = 0; p < d1; ++p)
                    for (std::size_t q = 0; q < d1; ++q)
                        for (std::size_t s = 0; s < d1; ++s)
                            for (std::size_t t = 0; t < d1; ++t) r(p, q, s, t) = r1(p, q, s, t);
                for (std::size_t p = 0; p < d2; ++p)
                    for (std::size_t q = 0; q < d2; ++q)
                        for (std::size_t s = 0; s < d2; ++s)
                            for (std::size_t t = 0; t < d2; ++t) r(d1 + p, d1 + q, d1 + s, d1 + t) = r2(p, q, s, t);
                return r;
            };
            m.charts.push_back(std::move(cg));
        }
    }
    return m;
}

ManifoldModel resolve_model(std::string_view spec) {
    if (spec == "s2") return make_sphere(1.0);
    if (spec == "t2") return make_flat_torus();
    if (spec == "s2xs2") {
        ManifoldModel m = make_product(make_sphere(1.0), make_sphere(1.0));
        m.name = "s2xs2";
        return m;
    }
    if (spec.substr(0, 5) == "s2:r=") {
        double r = 0.0;
        if (parse_double(spec.substr(5), r) && r > 0.0) {
            ManifoldModel m = make_sphere(r);
            if (r != 1.0) m.name = std::string(spec);
            return m;
        }
        throw Error(ErrorCode::UnknownModel, "bad sphere radius in '" + std::string(spec) + "'");
    }
    throw Error(ErrorCode::UnknownModel, "unknown model '" + std::string(spec) + "'");
}

std::vector<std::string> registered_models() { return {"s2", "s2:r=<float>", "t2", "s2xs2"}; }

ScalarField resolve_function(const ManifoldModel& model, std::string_view name) {
    const auto n = static_cast<Eigen::Index>(model.ambient_dim);
    const std::string label(name);
    if (name == "const") return pullback_field(model, label, constant_function(n, 1.0));

    if (model.ambient_dim == 3) {  // sphere
        if (name == "height") {
            Vector c = Vector::Zero(3);
            c[2] = 1.0;
            return pullback_field(model, label, linear_function(c));
        }
        if (name == "tilted") return pullback_field(model, label, tilted_height());
    } else if (model.ambient_dim == 4 || model.ambient_dim == 6) {
        // Cosine slots: t2 ambient (cos t1, sin t1, cos t2, sin t2), s2xs2 ambient (n1, n2).
        const bool torus = model.ambient_dim == 4;
        const Eigen::Index first_index = torus ? 0 : 2;
        const Eigen::Index second = torus ? 2 : 5;
        double a = 0.0, b = 0.0;
        bool known = false;
        if (model.ambient_dim == 4 && name == "double-cosine") {
            a = 1.0; b = 1.0; known = true;
        } else if (model.ambient_dim == 6 && (name == "height" || name == "generic")) {
            a = 1.0; b = std::numbers::sqrt2; known = true;
        } else if (parse_lin(name, a, b)) {
            known = true;
        }
        if (known) {
            Vector c = Vector::Zero(n);
            c[first_index] = a;
            c[second] = b;
            return pullback_field(model, label, linear_function(c));
        }
    }
    throw Error(ErrorCode::UnknownFunction, "model '" + model.name + "' has no function '" + label + "'");
}

std::vector<std::string> registered_functions(const ManifoldModel& model) {
    if (model.ambient_dim == 3) return {"height", "tilted", "const"};
    if (model.ambient_dim == 4) return {"double-cosine", "lin:<a>,<b>", "const"};
    if (model.ambient_dim == 6) return {"height", "generic", "lin:<a>,<b>", "const"};
    return {"const"};
}

}  // namespace localize
