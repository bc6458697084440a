#include <iostream>

class Widget {
public:
    ⟦virtual void draw() const { std::cout << "widget\n"; }⟧
    ⟦virtual void resize(int w, int h) {
        w_ = w;
        h_ = h;
    }⟧
    ⟦virtual ~Widget() = default;⟧

protected:
    int w_ = 0, h_ = 0;
};

class Button : public Widget {
public:
    ⟦void draw() const override { std::cout << "button " << w_ << 'x' << h_ << '\n'; }⟧
};

int main() {
    Button b;
    Widget& w = b;
    w.resize(20, 10);
    w.draw();
}
