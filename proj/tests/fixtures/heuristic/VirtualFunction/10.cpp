#include <iostream>
#include <vector>

struct Visitor;

struct Expr {
    ⟦virtual void accept(Visitor& v) const = 0;⟧
    ⟦virtual ~Expr() = default;⟧
};

struct Num;

struct Visitor {
    ⟦virtual void visit(const Num& n) = 0;⟧
    ⟦virtual ~Visitor() = default;⟧
};

struct Num : Expr {
    int v;
    explicit Num(int x) : v(x) {}
    void accept(Visitor& vis) const override { vis.visit(*this); }
};

struct Sum : Visitor {
    int total = 0;
    void visit(const Num& n) override { total += n.v; }
};

int main() {
    std::vector<Num> xs = {Num(1), Num(2)};
    Sum s;
    for (const auto& x : xs) x.accept(s);
    std::cout << s.total << '\n';
}
