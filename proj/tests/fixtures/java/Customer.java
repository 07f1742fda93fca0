package com.example.shop;

import java.util.ArrayList;
import java.util.List;

public class Customer {
    private final String name;
    private int total;
    private List<Order> orders = new ArrayList<>();

    public Customer(String name) {
        this.name = name;
    }

    public void addOrder(Order order) {
        orders.add(order);
        total = total + order.amount();
    }

    public int getTotal() {
        return total;
    }

    public String describe() {
        String prefix = "Customer ";
        return prefix + name.trim() + " owes " + total;
    }

    public boolean isBig() {
        return total > 1000;
    }
}
