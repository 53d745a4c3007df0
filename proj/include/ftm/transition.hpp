#pragma once

// Transition matrices between characteristic vectors and their norms.
// Entries are exact probabilities; T(parent, child)[j][k] is the weight of
// the map carrying the j-th neighbour of the parent onto the k-th
// neighbour of the child.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "net_structure.hpp"

namespace ftm {

class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows_; ++i)
            for (int j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw Error("matrix dimension mismatch");
        Matrix r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const Rational& v = x(i, k);
                if (sgn(v) == 0) continue;
                for (int j = 0; j < y.cols_; ++j)
                    if (sgn(y(k, j)) != 0) r(i, j) += v * y(k, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Rational column_sum(int j) const {
        Rational s = 0;
        for (int i = 0; i < rows_; ++i) s += (*this)(i, j);
        return s;
    }
    Rational row_sum(int i) const {
        Rational s = 0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }
    bool positive() const {
        for (const auto& v : a_)
            if (sgn(v) <= 0) return false;
        return true;
    }
    bool rows_nonzero() const {
        for (int i = 0; i < rows_; ++i)
            if (sgn(row_sum(i)) == 0) return false;
        return true;
    }
    bool columns_nonzero() const {
        for (int j = 0; j < cols_; ++j)
            if (sgn(column_sum(j)) == 0) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
            os << "]";
        }
        os << "]";
        return os.str();
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// total, smallest column sum, largest column sum
inline Rational norm(const Matrix& m) {
    Rational s = 0;
    for (int j = 0; j < m.cols(); ++j) s += m.column_sum(j);
    return s;
}
inline Rational norm_min(const Matrix& m) {
    Rational best = m.column_sum(0);
    for (int j = 1; j < m.cols(); ++j) best = std::min(best, m.column_sum(j));
    return best;
}
inline Rational norm_max(const Matrix& m) {
    Rational best = m.column_sum(0);
    for (int j = 1; j < m.cols(); ++j) best = std::max(best, m.column_sum(j));
    return best;
}

inline void require_probabilities(const IFSSystem& s) {
    if (!s.has_probabilities()) throw InputError("this operation needs probabilities");
}

inline Matrix letters_to_matrix(const LetterMatrix& L, const std::vector<Rational>& p) {
    Matrix m(L.rows, L.cols);
    for (int j = 0; j < L.rows; ++j)
        for (int k = 0; k < L.cols; ++k)
            if (L.at(j, k) >= 0) m(j, k) = p[L.at(j, k)];
    return m;
}

// T(cv, child at position edge)
inline Matrix primitive_matrix(const FiniteTypeStructure& st, int cv, int edge) {
    require_probabilities(st.ifs);
    const auto& ch = st.children(cv);
    if (edge < 0 || edge >= static_cast<int>(ch.size())) throw PathError("no such child");
    return letters_to_matrix(ch[edge].letters, st.ifs.probabilities);
}

// Product of primitive matrices along edges starting at cv.
inline Matrix path_matrix(const FiniteTypeStructure& st, int cv, const std::vector<int>& edges) {
    Matrix m = Matrix::identity(static_cast<int>(st.rv(cv).neighbours.size()));
    for (int e : edges) {
        m = m * primitive_matrix(st, cv, e);
        cv = st.children(cv)[e].child;
    }
    return m;
}

inline Matrix path_matrix(const FiniteTypeStructure& st, const Representation& r) {
    return path_matrix(st, r.cvs.front(), r.edges);
}

// Edges from a to b, or -1 entries if b is not a child of a.
inline std::vector<int> edges_between(const FiniteTypeStructure& st, int a, int b) {
    std::vector<int> out;
    const auto& ch = st.children(a);
    for (size_t i = 0; i < ch.size(); ++i)
        if (ch[i].child == b) out.push_back(static_cast<int>(i));
    return out;
}

// Translate a sequence of vector ids into edges; fails when a step is not
// an edge of the structure.
inline std::vector<int> edges_of(const FiniteTypeStructure& st, const std::vector<int>& cvs) {
    std::vector<int> edges;
    for (size_t i = 0; i + 1 < cvs.size(); ++i) {
        auto e = edges_between(st, cvs[i], cvs[i + 1]);
        if (e.empty())
            throw PathError("vector " + std::to_string(cvs[i + 1]) + " is not a child of " + std::to_string(cvs[i]));
        edges.push_back(e.front());
    }
    return edges;
}

// Total weight of the level-n words whose cylinders contain [a, b].
class WordMass {
  public:
    WordMass(const IFSSystem& s, int n) {
        require_probabilities(s);
        scale_ = s.rho.pow(n);
        // words with equal S_sigma(0) are merged level by level; the covering
        // test only looks at S_sigma(0)
        std::map<FieldElement, Rational, FieldLess> cur{{s.field->constant(0), Rational(1)}};
        FieldElement r = s.field->constant(1);
        words_ = 1;
        for (int k = 0; k < n; ++k) {
            std::map<FieldElement, Rational, FieldLess> next;
            for (const auto& [v, p] : cur)
                for (int j = 0; j < s.num_maps(); ++j) next[v + r * s.translations[j]] += p * s.probabilities[j];
            cur = std::move(next);
            r *= s.rho;
            words_ *= static_cast<size_t>(s.num_maps());
        }
        mass_ = std::move(cur);
    }

    size_t words() const { return words_; }

    Rational covering_mass(const FieldElement& a, const FieldElement& b) const {
        Rational total = 0;
        for (auto it = mass_.lower_bound(b - scale_); it != mass_.end() && it->first <= a; ++it) total += it->second;
        return total;
    }

  private:
    FieldElement scale_;
    size_t words_ = 0;
    std::map<FieldElement, Rational, FieldLess> mass_;
};

inline Rational brute_force_Pn(const IFSSystem& s, const FieldElement& a, const FieldElement& b, int n) {
    return WordMass(s, n).covering_mass(a, b);
}

}  // namespace ftm
