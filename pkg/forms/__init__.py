# Forms package 